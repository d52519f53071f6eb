#include "ringwalk/spectrum.hpp"

#include <algorithm>
#include <map>

namespace ringwalk {

int SpectrumReport::total_multiplicity() const {
    int t = 0;
    for (const auto& it : items) t += it.multiplicity;
    return t;
}

std::vector<std::complex<double>> SpectrumReport::eigenvalues() const {
    std::vector<std::complex<double>> out;
    out.reserve(total_multiplicity());
    for (const auto& it : items)
        for (int k = 0; k < it.multiplicity; ++k) out.push_back(it.value);
    return out;
}

std::vector<std::pair<std::complex<double>, int>> group_values(
    const std::vector<std::complex<double>>& values, double tol) {
    std::vector<std::complex<double>> sorted = values;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<std::pair<std::complex<double>, int>> out;
    for (const auto& z : sorted) {
        if (!out.empty() && std::abs(out.back().first - z) < tol)
            ++out.back().second;
        else
            out.emplace_back(z, 1);
    }
    return out;
}

namespace {

// Accumulates weight * root-of-unity terms with exact angles, collapsing to
// a complex double only at the end.
struct ExactFourierSum {
    std::map<Angle, Rat> terms;

    void add(const Rat& w, Angle a) {
        if (w == 0) return;
        terms[a] += w;
    }
    std::complex<double> value() const {
        std::complex<double> z = 0;
        for (const auto& [a, w] : terms) z += to_double(w) * a.value();
        return z;
    }
};

} // namespace

std::complex<double> fourier_P(const DualModule& d, const Distribution& p, int chi,
                               const UnitGroup& ur) {
    std::vector<int> generators = associates_orbit(*d.mod, ur, chi);
    std::complex<double> first = 0;
    bool have_first = false;
    std::complex<double> chi_value = 0;
    for (int g : generators) {
        ExactFourierSum sum;
        for (int b = 0; b < d.base->n; ++b) sum.add(p.weights[b], d.chi_at(g, b));
        std::complex<double> z = sum.value();
        if (!have_first) {
            first = z;
            have_first = true;
        } else if (std::abs(z - first) > 1e-12) {
            throw Error("fourier_P: value differs across generators of the same cyclic "
                        "submodule; P is not constant on associates");
        }
        if (g == chi) chi_value = z;
    }
    return chi_value;
}

AnnQuotient ann_quotient(const RingPtr& r, const Ideal& ann, const UnitGroup& ur) {
    AnnQuotient aq;
    aq.quotient = quotient_ring(r, ann);
    RingPtr q = aq.quotient.ring;
    aq.q_units = units(q);
    aq.unit_table = multiplicative_group(*q, aq.q_units.members, q->one);
    aq.pres = std::make_shared<AbelianPresentation>(invariant_factors(aq.unit_table));
    aq.rhos = character_group(aq.pres);
    aq.unit_local.assign(q->n, -1);
    for (int i = 0; i < aq.unit_table.n; ++i) aq.unit_local[aq.unit_table.element[i]] = i;
    aq.least_unit_in_coset.assign(q->n, -1);
    for (int u : ur.members) {
        int idx = aq.quotient.to_index[u];
        if (aq.least_unit_in_coset[idx] < 0) aq.least_unit_in_coset[idx] = u;
    }
    return aq;
}

std::complex<double> fourier_Q(const Distribution& q, const AnnQuotient& aq, int rho) {
    ExactFourierSum sum;
    const int n = static_cast<int>(aq.quotient.to_index.size());
    for (int a = 0; a < n; ++a) {
        int coset = aq.quotient.to_index[a];
        int local = aq.unit_local[coset];
        if (local < 0) continue; // coset is not a unit of R/ann(W)
        sum.add(q.weights[a], aq.rhos.evaluate(rho, local));
    }
    return sum.value();
}

std::complex<double> walk_value(const WalkSpec& spec, std::complex<double> phat,
                                std::complex<double> qhat) {
    switch (spec.kind) {
        case WalkKind::CoinToss: {
            double a = to_double(spec.alpha);
            return a * phat + (1.0 - a) * qhat;
        }
        case WalkKind::Affine:
            return phat * qhat;
        case WalkKind::Polynomial: {
            std::complex<double> acc = 0;
            for (const PolyTerm& t : spec.poly) {
                std::complex<double> term = t.coeff.to_complex();
                for (int i = 0; i < t.deg_p; ++i) term *= phat;
                for (int j = 0; j < t.deg_q; ++j) term *= qhat;
                acc += term;
            }
            return acc;
        }
    }
    throw Error("unreachable walk kind");
}

namespace {

void finish_report(SpectrumReport& rep, int expected_total) {
    if (rep.total_multiplicity() != expected_total)
        throw Error("spectrum " + rep.path + ": item count " +
                    std::to_string(rep.total_multiplicity()) + " != |V| = " +
                    std::to_string(expected_total));
    std::sort(rep.items.begin(), rep.items.end(), [](const SpectrumItem& a, const SpectrumItem& b) {
        if (a.w_size != b.w_size) return a.w_size < b.w_size;
        if (a.w_generator != b.w_generator) return a.w_generator < b.w_generator;
        return a.rho_exponents < b.rho_exponents;
    });
    rep.grouped = group_values(rep.eigenvalues(), 1e-9);
}

bool trivial_exponents(const std::vector<int>& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

} // namespace

SpectrumReport predicted_spectrum(const ModulePtr& v, const DualModule& d, const WalkSpec& spec) {
    spec.validate(*v);
    UnitGroup ur = units(v->ring);
    SpectrumReport rep;
    rep.path = "general";
    for (const CyclicSubmodule& w : cyclic_submodules(d.mod)) {
        int chi = w.generator;
        std::complex<double> phat = fourier_P(d, spec.p, chi, ur);
        AnnQuotient aq = ann_quotient(v->ring, w.annihilator, ur);
        int apex = minimal_fixing_idempotent(*d.mod, chi);
        for (int rho = 0; rho < aq.rhos.size(); ++rho) {
            SpectrumItem item;
            item.w_generator = chi;
            item.w_gen_coords = d.chars.exponents_of(chi);
            item.w_size = w.size();
            item.rho_exponents = aq.rhos.exponents_of(rho);
            item.rho_orders = aq.pres->orders;
            item.apex_idempotent = apex;
            item.value = walk_value(spec, phat, fourier_Q(spec.q, aq, rho));
            item.unit_item = w.size() == 1 && trivial_exponents(item.rho_exponents);
            item.side = "dual";
            rep.items.push_back(std::move(item));
        }
    }
    finish_report(rep, v->n);
    return rep;
}

SpectrumReport predicted_spectrum_triple(const ModulePtr& v, const DualModule& d,
                                         const WalkSpec& spec) {
    spec.validate(*v);
    const RingPtr& r = v->ring;
    UnitGroup ur = units(r);

    // orbits of U(R) on V^, canonical element = least index
    std::vector<int> orbit_canon(d.mod->n, -1);
    std::vector<int> orbit_reps;
    for (int chi = 0; chi < d.mod->n; ++chi) {
        if (orbit_canon[chi] >= 0) continue;
        std::vector<int> orb = associates_orbit(*d.mod, ur, chi);
        for (int x : orb) orbit_canon[x] = chi;
        orbit_reps.push_back(chi);
    }

    // precompute principal ideals Ra for the support condition Ra ⊇ Re
    std::vector<std::vector<int>> span_of(r->n);
    for (int a = 0; a < r->n; ++a) span_of[a] = principal_ideal(r, a).members;

    SpectrumReport rep;
    rep.path = "triple";
    for (int chi : orbit_reps) {
        int e = minimal_fixing_idempotent(*d.mod, chi);
        // the orbit's apex must be constant on the orbit
        for (int x : associates_orbit(*d.mod, ur, chi))
            if (minimal_fixing_idempotent(*d.mod, x) != e)
                throw Error("triple path: apex idempotent not constant on orbit");

        std::vector<int> ue = corner_units(*r, e);
        GroupTable ug = multiplicative_group(*r, ue, e);
        auto pres = std::make_shared<AbelianPresentation>(invariant_factors(ug));
        CharacterGroup rhos = character_group(pres);
        std::vector<int> local(r->n, -1);
        for (int i = 0; i < ug.n; ++i) local[ug.element[i]] = i;

        std::vector<int> stab = stabilizer_in_units(d, chi, ue);
        std::complex<double> phat = fourier_P(d, spec.p, chi, ur);
        const std::vector<int>& re_span = span_of[e];

        for (int rho = 0; rho < rhos.size(); ++rho) {
            bool kills_stab = true;
            for (int s : stab)
                if (!rhos.evaluate(rho, local[s]).is_zero()) {
                    kills_stab = false;
                    break;
                }
            if (!kills_stab) continue;
            ExactFourierSum sum;
            for (int a = 0; a < r->n; ++a) {
                if (spec.q.weights[a] == 0) continue;
                if (!std::includes(span_of[a].begin(), span_of[a].end(), re_span.begin(),
                                   re_span.end()))
                    continue;
                int ae = local[r->mulv(a, e)];
                if (ae < 0) throw Error("triple path: Ra contains Re but ae is not a unit of Re");
                sum.add(spec.q.weights[a], rhos.evaluate(rho, ae));
            }
            SpectrumItem item;
            item.w_generator = chi;
            item.w_gen_coords = d.chars.exponents_of(chi);
            item.w_size = static_cast<int>(cyclic_span(*d.mod, chi).size());
            item.rho_exponents = rhos.exponents_of(rho);
            item.rho_orders = pres->orders;
            item.apex_idempotent = e;
            item.value = walk_value(spec, phat, sum.value());
            item.unit_item = item.w_size == 1 && trivial_exponents(item.rho_exponents);
            item.side = "dual";
            rep.items.push_back(std::move(item));
        }
    }
    finish_report(rep, v->n);
    return rep;
}

int find_generating_character(const DualModule& d) {
    const RingPtr& r = d.base->ring;
    if (d.base->n != r->n) return -1;
    for (int chi = 0; chi < d.mod->n; ++chi) {
        std::vector<bool> hit(d.mod->n, false);
        bool injective = true;
        for (int a = 0; a < r->n; ++a) {
            int img = d.mod->act(a, chi);
            if (hit[img]) {
                injective = false;
                break;
            }
            hit[img] = true;
        }
        if (injective) return chi;
    }
    return -1;
}

SpectrumReport predicted_spectrum_frobenius(const ModulePtr& v, const DualModule& d,
                                            const WalkSpec& spec) {
    spec.validate(*v);
    const RingPtr& r = v->ring;
    if (v->n != r->n)
        throw Error("frobenius path requires V = R");
    int gen_chi = find_generating_character(d);
    if (gen_chi < 0)
        throw NoGeneratingCharacter("no generating character: " + r->name + " is not Frobenius");
    UnitGroup ur = units(r);

    SpectrumReport rep;
    rep.path = "frobenius";
    for (const CyclicSubmodule& w : cyclic_submodules(v)) {
        int b = w.generator; // W = Rb, a principal ideal of R
        ExactFourierSum psum;
        for (int x = 0; x < r->n; ++x)
            psum.add(spec.p.weights[x], d.chi_at(gen_chi, r->mulv(b, x)));
        std::complex<double> phat = psum.value();
        AnnQuotient aq = ann_quotient(r, w.annihilator, ur);
        for (int rho = 0; rho < aq.rhos.size(); ++rho) {
            SpectrumItem item;
            item.w_generator = b;
            item.w_gen_coords = d.pres->coords_of(b);
            item.w_size = w.size();
            item.rho_exponents = aq.rhos.exponents_of(rho);
            item.rho_orders = aq.pres->orders;
            item.value = walk_value(spec, phat, fourier_Q(spec.q, aq, rho));
            item.unit_item = w.size() == 1 && trivial_exponents(item.rho_exponents);
            item.side = "module";
            rep.items.push_back(std::move(item));
        }
    }
    finish_report(rep, v->n);
    return rep;
}

SpectrumReport predicted_spectrum_uniform(const ModulePtr& v, const Distribution& q,
                                          const Rat& alpha) {
    q.validate();
    if (q.n != v->ring->n) throw DimensionMismatch("Q has wrong length for ring");
    if (alpha < 0 || alpha > 1) throw ValidationError("alpha must lie in [0,1]");
    UnitGroup ur = units(v->ring);
    double a = to_double(alpha);
    AbelianPresentation pres = invariant_factors(additive_group(*v));

    // isomorphism classes of cyclic submodules = equal annihilators
    std::map<std::vector<int>, std::vector<const CyclicSubmodule*>> classes;
    auto subs = cyclic_submodules(v);
    for (const auto& w : subs) classes[w.annihilator.members].push_back(&w);

    SpectrumReport rep;
    rep.path = "uniform";
    for (const auto& [ann_members, ws] : classes) {
        const CyclicSubmodule& w = *ws.front(); // least (size, generator) representative
        int mult = static_cast<int>(ws.size());
        AnnQuotient aq = ann_quotient(v->ring, w.annihilator, ur);
        for (int rho = 0; rho < aq.rhos.size(); ++rho) {
            std::complex<double> value;
            if (w.size() == 1) {
                value = 1.0; // W = 0
            } else {
                ExactFourierSum sum;
                for (int x = 0; x < v->ring->n; ++x) {
                    if (q.weights[x] == 0) continue;
                    int coset = aq.quotient.to_index[x];
                    if (aq.unit_local[coset] < 0) continue;
                    int u = aq.least_unit_in_coset[coset];
                    if (u < 0)
                        throw Error("uniform path: unit coset with no unit representative");
                    sum.add(q.weights[x],
                            aq.rhos.evaluate(rho, aq.unit_local[aq.quotient.to_index[u]]));
                }
                value = (1.0 - a) * sum.value();
            }
            SpectrumItem item;
            item.w_generator = w.generator;
            item.w_gen_coords = pres.coords_of(w.generator);
            item.w_size = w.size();
            item.rho_exponents = aq.rhos.exponents_of(rho);
            item.rho_orders = aq.pres->orders;
            item.value = value;
            item.multiplicity = mult;
            item.unit_item = w.size() == 1 && trivial_exponents(item.rho_exponents);
            item.side = "module";
            rep.items.push_back(std::move(item));
        }
    }
    finish_report(rep, v->n);
    return rep;
}

SpectrumReport multiplication_walk_spectrum(const ModulePtr& v, const Distribution& q) {
    SpectrumReport rep = predicted_spectrum_uniform(v, q, Rat(0));
    rep.path = "multiplication";
    return rep;
}

} // namespace ringwalk
