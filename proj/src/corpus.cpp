#include "ringwalk/corpus.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>

#include "ringwalk/experiment.hpp"

namespace ringwalk {

namespace {

Distribution random_distribution(int n, std::mt19937& rng, int max_numerator) {
    std::uniform_int_distribution<int> pick(0, max_numerator);
    std::vector<long> num(n);
    long sum = 0;
    for (int i = 0; i < n; ++i) sum += (num[i] = pick(rng));
    if (sum == 0) {
        num[rng() % n] = 1;
        sum = 1;
    }
    Distribution d;
    d.n = n;
    d.weights.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rat w(num[i], sum);
        w.canonicalize();
        d.weights.push_back(w);
    }
    return d;
}

struct CaseSeed {
    std::string name;
    RingPtr ring;
    ModulePtr module;
    bool uniform_p;
};

void add_case(std::vector<CorpusCase>& out, const CaseSeed& seed) {
    // one deterministic stream per case index
    std::mt19937 rng(0xc0ffee + 977u * static_cast<unsigned>(out.size()));
    CorpusCase c;
    c.name = seed.name;
    c.ring = seed.ring;
    c.module = seed.module;
    c.uniform_p = seed.uniform_p;
    c.p = seed.uniform_p
              ? uniform_distribution(seed.module->n)
              : symmetrize_over_associates(*seed.module,
                                           random_distribution(seed.module->n, rng, 3));
    c.q = random_distribution(seed.ring->n, rng, 3);
    out.push_back(std::move(c));
}

} // namespace

std::vector<CorpusCase> build_corpus() {
    struct NamedRing {
        std::string name;
        RingPtr r;
        int quot_gen; // generator of the ideal for R/I shapes; -1 = none (fields)
    };
    std::vector<NamedRing> rings;
    for (int n = 2; n <= 12; ++n) {
        // largest proper divisor d (= quotient size of R/(d)) keeping the
        // mixed-sum module R/(d) (+) R within 64 states
        int gen = -1;
        for (int d = 2; d < n; ++d)
            if (n % d == 0 && d * n <= 64) gen = d;
        rings.push_back({"Z/" + std::to_string(n), build_zn(n), gen});
    }
    rings.push_back({"GF(4)", build_gf(2, 2, {1, 1, 1}), -1});
    rings.push_back({"GF(9)", build_gf(3, 2, {1, 0, 1}), -1});
    {
        auto r = build_product({build_zn(2), build_zn(4)});
        rings.push_back({"Z/2xZ/4", r, 2}); // element (0,2): span of size 2
    }
    {
        auto r = build_product({build_zn(6), build_zn(2)});
        rings.push_back({"Z/6xZ/2", r, 4}); // element (2,0): span of size 3
    }

    std::vector<CorpusCase> out;
    for (const auto& nr : rings) {
        add_case(out, {nr.name + " regular", nr.r, build_free_module(nr.r, 1), false});
        if (nr.r->n * nr.r->n <= 64)
            add_case(out, {nr.name + " square", nr.r, build_free_module(nr.r, 2), false});
        if (nr.quot_gen > 0) {
            auto quot = build_cyclic_module(nr.r, principal_ideal(nr.r, nr.quot_gen));
            add_case(out, {nr.name + " quotient", nr.r, quot, false});
            auto mixed = direct_sum({quot, build_free_module(nr.r, 1)});
            if (mixed->n <= 64) add_case(out, {nr.name + " mixed sum", nr.r, mixed, false});
        }
    }
    // uniform-P variants for the uniform-path and scaling criteria
    for (const auto& nr : rings) {
        if (nr.name == "Z/4" || nr.name == "Z/6" || nr.name == "Z/8" || nr.name == "Z/12" ||
            nr.name == "GF(4)" || nr.name == "Z/2xZ/4" || nr.name == "Z/6xZ/2")
            add_case(out, {nr.name + " uniform", nr.r, build_free_module(nr.r, 1), true});
    }
    add_case(out, {"Z/4 square uniform", rings[2].r, build_free_module(rings[2].r, 2), true});
    return out;
}

std::vector<std::pair<std::string, WalkSpec>> corpus_walks(const CorpusCase& c) {
    std::vector<std::pair<std::string, WalkSpec>> out;
    for (const Rat& alpha : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)}) {
        WalkSpec s;
        s.kind = WalkKind::CoinToss;
        s.alpha = alpha;
        s.p = c.p;
        s.q = c.q;
        out.emplace_back("coin(" + rational_to_string(alpha) + ")", std::move(s));
    }
    {
        WalkSpec s;
        s.kind = WalkKind::Affine;
        s.p = c.p;
        s.q = c.q;
        out.emplace_back("affine", std::move(s));
    }
    {
        WalkSpec s;
        s.kind = WalkKind::Polynomial;
        s.poly = {{2, 1, CRat(Rat(1))}};
        s.p = c.p;
        s.q = c.q;
        out.emplace_back("x^2y", std::move(s));
    }
    return out;
}

CorpusCaseResult run_corpus_case(const CorpusCase& c, double tol) {
    CorpusCaseResult res;
    res.name = c.name;
    res.module_size = c.module->n;

    DualModule dual = dual_module(c.module);
    UnitGroup ur = units(c.ring);
    long total = 0;
    for (const auto& w : cyclic_submodules(dual.mod))
        total += ann_quotient(c.ring, w.annihilator, ur).rhos.size();
    res.count_identity = total == c.module->n;

    res.all_pass = res.count_identity;
    for (auto& [name, walk] : corpus_walks(c)) {
        CorpusWalkResult wr;
        wr.walk = name;
        TransitionMatrix t = build_walk_matrix(*c.module, walk);
        SpectrumReport s = predicted_spectrum(c.module, dual, walk);
        VerificationReport v = verify_power_sums(t, s, tol);
        wr.max_residual = v.max_residual;
        wr.pass = v.pass && s.total_multiplicity() == c.module->n;
        IrreducibilityReport irr = irreducibility_report(*c.module, walk, t);
        wr.sufficiency_sound = (!irr.sufficient_irreducible || irr.exact_irreducible) &&
                               (!irr.sufficient_aperiodic || irr.exact_aperiodic);
        res.all_pass = res.all_pass && wr.pass && wr.sufficiency_sound;
        res.walks.push_back(std::move(wr));
    }
    return res;
}

int run_corpus(double tol, std::ostream& log) {
    auto corpus = build_corpus();
    log << "running " << corpus.size() << " corpus cases at tol " << tol << "\n";
    log << std::left << std::setw(26) << "case" << std::right << std::setw(5) << "|V|"
        << std::setw(10) << "count" << std::setw(14) << "max resid" << "  result\n";
    bool all = true;
    for (const auto& c : corpus) {
        CorpusCaseResult r = run_corpus_case(c, tol);
        double worst = 0;
        for (const auto& w : r.walks) worst = std::max(worst, w.max_residual);
        log << std::left << std::setw(26) << r.name << std::right << std::setw(5) << r.module_size
            << std::setw(10) << (r.count_identity ? "ok" : "BROKEN") << std::setw(14)
            << std::scientific << std::setprecision(2) << worst << std::defaultfloat << "  "
            << (r.all_pass ? "PASS" : "FAIL") << "\n";
        all = all && r.all_pass;
    }
    log << (all ? "corpus PASS" : "corpus FAIL") << "\n";
    return all ? kExitOk : kExitVerifyFail;
}

} // namespace ringwalk
