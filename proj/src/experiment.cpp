#include "ringwalk/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ringwalk {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* spec_error_code_name(SpecErrorCode code) {
    switch (code) {
        case SpecErrorCode::MalformedJson: return "malformed-json";
        case SpecErrorCode::UnknownKey: return "unknown-key";
        case SpecErrorCode::MissingKey: return "missing-key";
        case SpecErrorCode::WrongType: return "wrong-type";
        case SpecErrorCode::BadValue: return "bad-value";
        case SpecErrorCode::BadRational: return "bad-rational";
        case SpecErrorCode::AlphaRange: return "alpha-range";
        case SpecErrorCode::WeightsSum: return "weights-sum";
        case SpecErrorCode::WeightsLength: return "weights-length";
        case SpecErrorCode::NegativeWeight: return "negative-weight";
        case SpecErrorCode::ReduciblePolynomial: return "reducible-polynomial";
        case SpecErrorCode::BadRingDescriptor: return "bad-ring";
        case SpecErrorCode::BadModuleDescriptor: return "bad-module";
        case SpecErrorCode::BadWalkDescriptor: return "bad-walk";
        case SpecErrorCode::HypothesisViolation: return "hypothesis-violation";
        case SpecErrorCode::PathInapplicable: return "path-inapplicable";
    }
    return "unknown";
}

namespace {

std::string issues_to_message(const std::vector<SpecIssue>& issues) {
    std::ostringstream out;
    out << "spec error";
    for (const auto& i : issues)
        out << "\n  [" << spec_error_code_name(i.code) << "] at " << (i.path.empty() ? "/" : i.path)
            << ": " << i.message;
    return out.str();
}

} // namespace

SpecError::SpecError(std::vector<SpecIssue> issues)
    : Error(issues_to_message(issues)), issues_(std::move(issues)) {}

namespace {

// Aborts parsing of one section after recording an issue; other sections
// still get parsed so the caller sees every problem at once.
struct SectionAbort {};

struct ParseCtx {
    std::vector<SpecIssue> issues;

    [[noreturn]] void fail(SpecErrorCode code, const std::string& path, const std::string& msg) {
        issues.push_back({code, path, msg});
        throw SectionAbort{};
    }
    void note(SpecErrorCode code, const std::string& path, const std::string& msg) {
        issues.push_back({code, path, msg});
    }
};

const json& require_key(const json& obj, const char* key, const std::string& path, ParseCtx& ctx) {
    if (!obj.is_object() || !obj.contains(key))
        ctx.fail(SpecErrorCode::MissingKey, path, std::string("missing required key '") + key + "'");
    return obj.at(key);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path, ParseCtx& ctx) {
    if (!obj.is_object()) return;
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) ok = true;
        if (!ok) ctx.note(SpecErrorCode::UnknownKey, path + "/" + k, "unknown key '" + k + "'");
    }
}

int require_int(const json& j, const std::string& path, ParseCtx& ctx) {
    if (!j.is_number_integer()) ctx.fail(SpecErrorCode::WrongType, path, "expected an integer");
    return j.get<int>();
}

Rat parse_rat(const json& j, const std::string& path, ParseCtx& ctx) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        ctx.fail(SpecErrorCode::BadRational, path, e.what());
    }
    ctx.fail(SpecErrorCode::BadRational, path, "rationals are strings like \"2/5\" (or integers)");
}

RingPtr parse_ring(const json& j, const std::string& path, ParseCtx& ctx, json& echo) {
    if (!j.is_object() || j.size() != 1)
        ctx.fail(SpecErrorCode::BadRingDescriptor, path,
                 "ring descriptor must be an object with exactly one of: zn, gf, product");
    if (j.contains("zn")) {
        int n = require_int(j.at("zn"), path + "/zn", ctx);
        if (n < 1) ctx.fail(SpecErrorCode::BadValue, path + "/zn", "zn must be >= 1");
        if (n > 4096) ctx.fail(SpecErrorCode::BadValue, path + "/zn", "ring too large");
        echo = json{{"zn", n}};
        return build_zn(n);
    }
    if (j.contains("gf")) {
        const json& g = j.at("gf");
        reject_unknown_keys(g, {"p", "k", "poly"}, path + "/gf", ctx);
        int p = require_int(require_key(g, "p", path + "/gf", ctx), path + "/gf/p", ctx);
        int k = require_int(require_key(g, "k", path + "/gf", ctx), path + "/gf/k", ctx);
        const json& pj = require_key(g, "poly", path + "/gf", ctx);
        if (!pj.is_array())
            ctx.fail(SpecErrorCode::WrongType, path + "/gf/poly", "expected coefficient array");
        std::vector<int> poly;
        for (size_t i = 0; i < pj.size(); ++i)
            poly.push_back(require_int(pj[i], path + "/gf/poly/" + std::to_string(i), ctx));
        try {
            RingPtr r = build_gf(p, k, poly);
            echo = json{{"gf", {{"p", p}, {"k", k}, {"poly", poly}}}};
            return r;
        } catch (const ReduciblePolyError& e) {
            ctx.fail(SpecErrorCode::ReduciblePolynomial, path + "/gf/poly", e.what());
        } catch (const ValidationError& e) {
            ctx.fail(SpecErrorCode::BadRingDescriptor, path + "/gf", e.what());
        }
    }
    if (j.contains("product")) {
        const json& pj = j.at("product");
        if (!pj.is_array() || pj.empty())
            ctx.fail(SpecErrorCode::BadRingDescriptor, path + "/product",
                     "product needs a nonempty array of ring descriptors");
        std::vector<RingPtr> factors;
        json echoes = json::array();
        for (size_t i = 0; i < pj.size(); ++i) {
            json sub;
            factors.push_back(parse_ring(pj[i], path + "/product/" + std::to_string(i), ctx, sub));
            echoes.push_back(sub);
        }
        long total = 1;
        for (const auto& f : factors) total *= f->n;
        if (total > 4096) ctx.fail(SpecErrorCode::BadValue, path + "/product", "ring too large");
        echo = json{{"product", echoes}};
        return build_product(factors);
    }
    ctx.fail(SpecErrorCode::BadRingDescriptor, path,
             "ring descriptor must contain one of: zn, gf, product");
}

ModulePtr parse_module(const json& j, const std::string& path, const RingPtr& ring, ParseCtx& ctx,
                       json& echo) {
    if (!j.is_object() || j.size() != 1)
        ctx.fail(SpecErrorCode::BadModuleDescriptor, path,
                 "module descriptor must be an object with exactly one of: free, cyclic, sum");
    if (j.contains("free")) {
        int d = require_int(j.at("free"), path + "/free", ctx);
        if (d < 1) ctx.fail(SpecErrorCode::BadValue, path + "/free", "free rank must be >= 1");
        double size = 1;
        for (int i = 0; i < d; ++i) size *= ring->n;
        if (size > 4096) ctx.fail(SpecErrorCode::BadValue, path + "/free", "module too large");
        echo = json{{"free", d}};
        return build_free_module(ring, d);
    }
    if (j.contains("cyclic")) {
        const json& c = j.at("cyclic");
        reject_unknown_keys(c, {"ideal_of"}, path + "/cyclic", ctx);
        int a = require_int(require_key(c, "ideal_of", path + "/cyclic", ctx),
                            path + "/cyclic/ideal_of", ctx);
        if (a < 0 || a >= ring->n)
            ctx.fail(SpecErrorCode::BadValue, path + "/cyclic/ideal_of",
                     "element index out of range for " + ring->name);
        echo = json{{"cyclic", {{"ideal_of", a}}}};
        return build_cyclic_module(ring, principal_ideal(ring, a));
    }
    if (j.contains("sum")) {
        const json& sj = j.at("sum");
        if (!sj.is_array() || sj.empty())
            ctx.fail(SpecErrorCode::BadModuleDescriptor, path + "/sum",
                     "sum needs a nonempty array of module descriptors");
        std::vector<ModulePtr> parts;
        json echoes = json::array();
        double size = 1;
        for (size_t i = 0; i < sj.size(); ++i) {
            json sub;
            parts.push_back(parse_module(sj[i], path + "/sum/" + std::to_string(i), ring, ctx, sub));
            echoes.push_back(sub);
            size *= parts.back()->n;
        }
        if (size > 4096) ctx.fail(SpecErrorCode::BadValue, path + "/sum", "module too large");
        echo = json{{"sum", echoes}};
        return direct_sum(parts);
    }
    ctx.fail(SpecErrorCode::BadModuleDescriptor, path,
             "module descriptor must contain one of: free, cyclic, sum");
}

Distribution parse_distribution(const json& j, const std::string& path, int carrier, ParseCtx& ctx,
                                json& echo) {
    if (!j.is_object() || j.size() != 1)
        ctx.fail(SpecErrorCode::WrongType, path,
                 "distribution must be an object with exactly one of: uniform, weights");
    Distribution d;
    d.n = carrier;
    if (j.contains("uniform")) {
        if (!j.at("uniform").is_boolean() || !j.at("uniform").get<bool>())
            ctx.fail(SpecErrorCode::BadValue, path + "/uniform", "only {\"uniform\": true} is valid");
        echo = json{{"uniform", true}};
        return uniform_distribution(carrier);
    }
    if (!j.contains("weights"))
        ctx.fail(SpecErrorCode::WrongType, path, "distribution needs 'uniform' or 'weights'");
    const json& w = j.at("weights");
    d.weights.assign(carrier, Rat(0));
    if (w.is_array()) {
        if (static_cast<int>(w.size()) != carrier)
            ctx.fail(SpecErrorCode::WeightsLength, path + "/weights",
                     "expected " + std::to_string(carrier) + " weights, got " +
                         std::to_string(w.size()));
        for (int i = 0; i < carrier; ++i)
            d.weights[i] = parse_rat(w[i], path + "/weights/" + std::to_string(i), ctx);
    } else if (w.is_object()) {
        for (const auto& [k, v] : w.items()) {
            int idx = -1;
            try {
                size_t pos = 0;
                idx = std::stoi(k, &pos);
                if (pos != k.size()) idx = -1;
            } catch (...) {
                idx = -1;
            }
            if (idx < 0 || idx >= carrier)
                ctx.fail(SpecErrorCode::BadValue, path + "/weights/" + k,
                         "weight key must be an element index below " + std::to_string(carrier));
            d.weights[idx] = parse_rat(v, path + "/weights/" + k, ctx);
        }
    } else {
        ctx.fail(SpecErrorCode::WrongType, path + "/weights",
                 "weights must be an array or an index-keyed object");
    }
    Rat sum = 0;
    for (int i = 0; i < carrier; ++i) {
        if (d.weights[i] < 0)
            ctx.fail(SpecErrorCode::NegativeWeight, path + "/weights/" + std::to_string(i),
                     "weights must be nonnegative");
        sum += d.weights[i];
    }
    if (sum != 1)
        ctx.fail(SpecErrorCode::WeightsSum, path + "/weights",
                 "weights must sum to 1 (got " + rational_to_string(sum) + ")");
    json arr = json::array();
    for (const Rat& x : d.weights) arr.push_back(rational_to_string(x));
    echo = json{{"weights", arr}};
    return d;
}

void parse_walk(const json& j, const std::string& path, WalkSpec& walk, ParseCtx& ctx, json& echo) {
    if (j.is_string()) {
        if (j.get<std::string>() != "affine")
            ctx.fail(SpecErrorCode::BadWalkDescriptor, path, "the only bare walk name is \"affine\"");
        walk.kind = WalkKind::Affine;
        echo = "affine";
        return;
    }
    if (!j.is_object() || j.size() != 1)
        ctx.fail(SpecErrorCode::BadWalkDescriptor, path,
                 "walk must be \"affine\" or an object with one of: coin_toss, affine, poly");
    if (j.contains("coin_toss")) {
        const json& c = j.at("coin_toss");
        reject_unknown_keys(c, {"alpha"}, path + "/coin_toss", ctx);
        walk.kind = WalkKind::CoinToss;
        walk.alpha = parse_rat(require_key(c, "alpha", path + "/coin_toss", ctx),
                               path + "/coin_toss/alpha", ctx);
        if (walk.alpha < 0 || walk.alpha > 1)
            ctx.fail(SpecErrorCode::AlphaRange, path + "/coin_toss/alpha", "alpha must lie in [0,1]");
        echo = json{{"coin_toss", {{"alpha", rational_to_string(walk.alpha)}}}};
        return;
    }
    if (j.contains("affine")) {
        if (!j.at("affine").is_object() || !j.at("affine").empty())
            ctx.fail(SpecErrorCode::BadWalkDescriptor, path + "/affine", "affine takes no parameters");
        walk.kind = WalkKind::Affine;
        echo = json{{"affine", json::object()}};
        return;
    }
    if (j.contains("poly")) {
        const json& pj = j.at("poly");
        if (!pj.is_array() || pj.empty())
            ctx.fail(SpecErrorCode::BadWalkDescriptor, path + "/poly",
                     "poly needs a nonempty array of [i, j, re, im] terms");
        walk.kind = WalkKind::Polynomial;
        json echoes = json::array();
        for (size_t t = 0; t < pj.size(); ++t) {
            const json& term = pj[t];
            std::string tp = path + "/poly/" + std::to_string(t);
            if (!term.is_array() || term.size() < 3 || term.size() > 4)
                ctx.fail(SpecErrorCode::BadWalkDescriptor, tp,
                         "term must be [i, j, re] or [i, j, re, im]");
            PolyTerm pt;
            pt.deg_p = require_int(term[0], tp + "/0", ctx);
            pt.deg_q = require_int(term[1], tp + "/1", ctx);
            if (pt.deg_p < 0 || pt.deg_q < 0)
                ctx.fail(SpecErrorCode::BadValue, tp, "exponents must be nonnegative");
            pt.coeff.re = parse_rat(term[2], tp + "/2", ctx);
            pt.coeff.im = term.size() == 4 ? parse_rat(term[3], tp + "/3", ctx) : Rat(0);
            echoes.push_back(json::array({pt.deg_p, pt.deg_q, rational_to_string(pt.coeff.re),
                                          rational_to_string(pt.coeff.im)}));
            walk.poly.push_back(std::move(pt));
        }
        echo = json{{"poly", echoes}};
        return;
    }
    ctx.fail(SpecErrorCode::BadWalkDescriptor, path,
             "walk must contain one of: coin_toss, affine, poly");
}

void parse_options(const json& j, const std::string& path, ExperimentOptions& opt, ParseCtx& ctx,
                   json& echo) {
    reject_unknown_keys(j, {"tol", "symmetrize", "paths", "out", "dot"}, path, ctx);
    if (j.contains("tol")) {
        if (!j.at("tol").is_number() || j.at("tol").get<double>() <= 0)
            ctx.fail(SpecErrorCode::BadValue, path + "/tol", "tol must be a positive number");
        opt.tol = j.at("tol").get<double>();
    }
    if (j.contains("symmetrize")) {
        if (!j.at("symmetrize").is_boolean())
            ctx.fail(SpecErrorCode::WrongType, path + "/symmetrize", "expected a boolean");
        opt.symmetrize = j.at("symmetrize").get<bool>();
    }
    if (j.contains("dot")) {
        if (!j.at("dot").is_boolean())
            ctx.fail(SpecErrorCode::WrongType, path + "/dot", "expected a boolean");
        opt.emit_dot = j.at("dot").get<bool>();
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string())
            ctx.fail(SpecErrorCode::WrongType, path + "/out", "expected a string");
        opt.out_dir = j.at("out").get<std::string>();
    }
    if (j.contains("paths")) {
        const json& pj = j.at("paths");
        if (!pj.is_array() || pj.empty())
            ctx.fail(SpecErrorCode::BadValue, path + "/paths", "paths must be a nonempty array");
        opt.paths.clear();
        for (size_t i = 0; i < pj.size(); ++i) {
            if (!pj[i].is_string())
                ctx.fail(SpecErrorCode::WrongType, path + "/paths/" + std::to_string(i),
                         "expected a string");
            std::string p = pj[i].get<std::string>();
            if (p != "general" && p != "triple" && p != "frobenius" && p != "uniform")
                ctx.fail(SpecErrorCode::BadValue, path + "/paths/" + std::to_string(i),
                         "unknown path '" + p + "'");
            opt.paths.push_back(p);
        }
    }
    echo = json{{"tol", opt.tol},
                {"symmetrize", opt.symmetrize},
                {"paths", opt.paths},
                {"out", opt.out_dir},
                {"dot", opt.emit_dot}};
}

} // namespace

ExperimentSpec parse_spec(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError({{SpecErrorCode::MalformedJson, "", e.what()}});
    }
    if (!root.is_object())
        throw SpecError({{SpecErrorCode::WrongType, "", "spec must be a JSON object"}});
    ParseCtx ctx;
    reject_unknown_keys(root, {"ring", "module", "walk", "P", "Q", "options"}, "", ctx);

    ExperimentSpec spec;
    json echo_ring, echo_module, echo_walk, echo_p, echo_q,
        echo_opt = json{{"tol", spec.options.tol},
                        {"symmetrize", spec.options.symmetrize},
                        {"paths", spec.options.paths},
                        {"out", ""},
                        {"dot", false}};
    try {
        spec.ring = parse_ring(require_key(root, "ring", "", ctx), "/ring", ctx, echo_ring);
    } catch (const SectionAbort&) {}
    try {
        if (spec.ring)
            spec.module = parse_module(require_key(root, "module", "", ctx), "/module", spec.ring,
                                       ctx, echo_module);
    } catch (const SectionAbort&) {}
    try {
        parse_walk(require_key(root, "walk", "", ctx), "/walk", spec.walk, ctx, echo_walk);
    } catch (const SectionAbort&) {}
    try {
        if (spec.module)
            spec.walk.p =
                parse_distribution(require_key(root, "P", "", ctx), "/P", spec.module->n, ctx, echo_p);
    } catch (const SectionAbort&) {}
    try {
        if (spec.ring)
            spec.walk.q =
                parse_distribution(require_key(root, "Q", "", ctx), "/Q", spec.ring->n, ctx, echo_q);
    } catch (const SectionAbort&) {}
    try {
        if (root.contains("options"))
            parse_options(root.at("options"), "/options", spec.options, ctx, echo_opt);
    } catch (const SectionAbort&) {}

    if (!ctx.issues.empty()) throw SpecError(std::move(ctx.issues));

    json echo{{"ring", echo_ring}, {"module", echo_module}, {"walk", echo_walk},
              {"P", echo_p},       {"Q", echo_q},           {"options", echo_opt}};
    spec.canonical_json = echo.dump(2);
    return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string crat_to_string(const CRat& c) {
    if (c.im == 0) return rational_to_string(c.re);
    std::string s = rational_to_string(c.re);
    if (c.im > 0) s += "+";
    return s + rational_to_string(c.im) + "i";
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string matrix_to_csv(const TransitionMatrix& t) {
    std::ostringstream out;
    out << "state";
    for (int j = 0; j < t.n; ++j) out << "," << csv_escape(t.labels[j]);
    out << "\n";
    for (int i = 0; i < t.n; ++i) {
        out << csv_escape(t.labels[i]);
        for (int j = 0; j < t.n; ++j) {
            out << ",";
            if (t.is_complex())
                out << csv_escape(crat_to_string(t.cplx()(i, j)));
            else
                out << rational_to_string(t.real()(i, j));
        }
        out << "\n";
    }
    return out.str();
}

std::string matrix_to_dot(const TransitionMatrix& t) {
    if (t.is_complex())
        throw ValidationError("dot output is only defined for stochastic (real) walks");
    std::ostringstream out;
    out << "digraph walk {\n  rankdir=LR;\n";
    for (int i = 0; i < t.n; ++i) out << "  \"" << t.labels[i] << "\";\n";
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) {
            const Rat& w = t.real()(i, j);
            if (w == 0) continue;
            out << "  \"" << t.labels[i] << "\" -> \"" << t.labels[j] << "\" [label=\""
                << rational_to_string(w) << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

namespace {

json item_to_json(const SpectrumItem& it) {
    json j{{"side", it.side},
           {"w_generator", it.w_generator},
           {"w_coords", it.w_gen_coords},
           {"w_size", it.w_size},
           {"rho", it.rho_exponents},
           {"rho_orders", it.rho_orders},
           {"value", {{"re", it.value.real()}, {"im", it.value.imag()}}},
           {"multiplicity", it.multiplicity},
           {"unit_item", it.unit_item}};
    if (it.apex_idempotent >= 0) j["apex"] = it.apex_idempotent;
    return j;
}

SpectrumItem item_from_json(const json& j) {
    SpectrumItem it;
    it.side = j.at("side").get<std::string>();
    it.w_generator = j.at("w_generator").get<int>();
    it.w_gen_coords = j.at("w_coords").get<std::vector<int>>();
    it.w_size = j.at("w_size").get<int>();
    it.rho_exponents = j.at("rho").get<std::vector<int>>();
    it.rho_orders = j.at("rho_orders").get<std::vector<int>>();
    it.value = {j.at("value").at("re").get<double>(), j.at("value").at("im").get<double>()};
    it.multiplicity = j.at("multiplicity").get<int>();
    it.unit_item = j.at("unit_item").get<bool>();
    it.apex_idempotent = j.contains("apex") ? j.at("apex").get<int>() : -1;
    return it;
}

json report_to_json(const SpectrumReport& r) {
    json items = json::array();
    for (const auto& it : r.items) items.push_back(item_to_json(it));
    json grouped = json::array();
    for (const auto& [z, m] : r.grouped)
        grouped.push_back(json{{"re", z.real()}, {"im", z.imag()}, {"multiplicity", m}});
    return json{{"path", r.path}, {"items", items}, {"grouped", grouped}};
}

} // namespace

std::string spectrum_reports_to_json(const std::vector<SpectrumReport>& reports,
                                     const FiniteModule& v) {
    json paths = json::array();
    for (const auto& r : reports) paths.push_back(report_to_json(r));
    json root{{"module", {{"name", v.name}, {"size", v.n}}}, {"paths", paths}};
    return root.dump(2) + "\n";
}

std::vector<SpectrumReport> spectrum_reports_from_json(const std::string& text) {
    json root = json::parse(text);
    std::vector<SpectrumReport> out;
    for (const json& p : root.at("paths")) {
        SpectrumReport r;
        r.path = p.at("path").get<std::string>();
        for (const json& ij : p.at("items")) r.items.push_back(item_from_json(ij));
        r.grouped = group_values(r.eigenvalues(), 1e-9);
        out.push_back(std::move(r));
    }
    return out;
}

std::string grouped_spectrum_to_csv(const SpectrumReport& report) {
    std::ostringstream out;
    out << "value_re,value_im,multiplicity\n";
    for (const auto& [z, m] : report.grouped)
        out << fmt_double(z.real()) << "," << fmt_double(z.imag()) << "," << m << "\n";
    return out.str();
}

namespace {

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + p.string() + "'");
}

bool is_regular_module(const FiniteRing& r, const FiniteModule& v) {
    return v.n == r.n && v.add == r.add && v.action == r.mul;
}

bool is_uniform(const Distribution& d) {
    Rat u(1, d.n);
    u.canonicalize();
    for (const Rat& w : d.weights)
        if (w != u) return false;
    return true;
}

} // namespace

int run_experiment(const ExperimentSpec& spec, RunStage stage, const RunOverrides& overrides,
                   std::ostream& log) {
    ExperimentOptions opt = spec.options;
    if (overrides.tol) opt.tol = *overrides.tol;
    if (overrides.symmetrize) opt.symmetrize = *overrides.symmetrize;
    if (overrides.paths) opt.paths = *overrides.paths;
    if (overrides.out_dir) opt.out_dir = *overrides.out_dir;
    if (overrides.emit_dot) opt.emit_dot = *overrides.emit_dot;
    if (opt.out_dir.empty()) opt.out_dir = ".";
    if (opt.paths.empty()) opt.paths = {"general"};
    for (const std::string& p : opt.paths)
        if (p != "general" && p != "triple" && p != "frobenius" && p != "uniform") {
            log << "[" << spec_error_code_name(SpecErrorCode::BadValue) << "] unknown path '" << p
                << "'\n";
            return kExitSpecError;
        }

    const ModulePtr& v = spec.module;
    WalkSpec walk = spec.walk;
    if (opt.symmetrize) walk.p = symmetrize_over_associates(*v, walk.p);
    try {
        walk.validate(*v);
    } catch (const HypothesisError& e) {
        log << "[" << spec_error_code_name(SpecErrorCode::HypothesisViolation) << "] " << e.what()
            << " (pass --symmetrize to average P over unit orbits)\n";
        return kExitSpecError;
    } catch (const Error& e) {
        log << "[" << spec_error_code_name(SpecErrorCode::BadValue) << "] " << e.what() << "\n";
        return kExitSpecError;
    }

    TransitionMatrix t = build_walk_matrix(*v, walk);

    fs::path out(opt.out_dir);
    try {
        fs::create_directories(out);
        write_file(out / "matrix.csv", matrix_to_csv(t));
        if (opt.emit_dot && !t.is_complex()) write_file(out / "graph.dot", matrix_to_dot(t));
    } catch (const fs::filesystem_error& e) {
        log << "i/o error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const IoError& e) {
        log << e.what() << "\n";
        return kExitIoError;
    }
    log << "built " << v->n << "x" << v->n << (t.is_complex() ? " complex" : "")
        << " transition matrix for " << v->name << (t.row_stochastic ? " (row-stochastic)" : "")
        << "\n";
    if (stage == RunStage::Build) return kExitOk;

    DualModule dual = dual_module(v);
    std::vector<SpectrumReport> reports;
    for (const std::string& p : opt.paths) {
        try {
            if (p == "general") {
                reports.push_back(predicted_spectrum(v, dual, walk));
            } else if (p == "triple") {
                reports.push_back(predicted_spectrum_triple(v, dual, walk));
            } else if (p == "frobenius") {
                if (!is_regular_module(*spec.ring, *v)) {
                    log << "[" << spec_error_code_name(SpecErrorCode::PathInapplicable)
                        << "] frobenius path requires V = R (module {\"free\": 1})\n";
                    return kExitSpecError;
                }
                reports.push_back(predicted_spectrum_frobenius(v, dual, walk));
            } else if (p == "uniform") {
                if (walk.kind != WalkKind::CoinToss || !is_uniform(walk.p)) {
                    log << "[" << spec_error_code_name(SpecErrorCode::PathInapplicable)
                        << "] uniform path requires a coin-toss walk with uniform P\n";
                    return kExitSpecError;
                }
                reports.push_back(predicted_spectrum_uniform(v, walk.q, walk.alpha));
            }
        } catch (const NoGeneratingCharacter& e) {
            log << "[" << spec_error_code_name(SpecErrorCode::PathInapplicable) << "] " << e.what()
                << "\n";
            return kExitSpecError;
        }
    }
    if (overrides.perturb != 0.0) {
        for (auto& r : reports) {
            r.items.front().value += overrides.perturb;
            r.grouped = group_values(r.eigenvalues(), 1e-9);
        }
        log << "perturbed one predicted eigenvalue by " << overrides.perturb << "\n";
    }

    try {
        write_file(out / "spectrum.json", spectrum_reports_to_json(reports, *v));
        write_file(out / "spectrum.csv", grouped_spectrum_to_csv(reports.front()));
    } catch (const IoError& e) {
        log << e.what() << "\n";
        return kExitIoError;
    }
    for (const auto& r : reports)
        log << "predicted spectrum (" << r.path << "): " << r.items.size() << " items, "
            << r.grouped.size() << " distinct values\n";
    if (stage == RunStage::Spectrum) return kExitOk;

    bool all_pass = true;
    json vpaths = json::array();
    for (const auto& r : reports) {
        VerificationReport rep = verify_power_sums(t, r, opt.tol);
        all_pass = all_pass && rep.pass;
        json entry{{"path", r.path},
                   {"pass", rep.pass},
                   {"max_residual", rep.max_residual},
                   {"residuals", rep.power_sum_residuals},
                   {"spectral_gap", rep.spectral_gap}};
        if (rep.char_poly_match) entry["char_poly_match"] = *rep.char_poly_match;
        vpaths.push_back(entry);
        log << (rep.pass ? "PASS" : "FAIL") << " power sums (" << r.path
            << "): max residual = " << rep.max_residual << "\n";
    }

    IrreducibilityReport irr = irreducibility_report(*v, walk, t);
    json jirr{{"p_support_generates", irr.p_support_generates},
              {"one_in_support_q", irr.one_in_support_q},
              {"zero_in_monoid_q", irr.zero_in_monoid_q},
              {"sufficient_irreducible", irr.sufficient_irreducible},
              {"sufficient_aperiodic", irr.sufficient_aperiodic},
              {"exact_irreducible", irr.exact_irreducible},
              {"exact_aperiodic", irr.exact_aperiodic}};

    json jstat = json::object();
    if (t.row_stochastic && !t.is_complex()) {
        StationaryResult st = stationary_distribution(t);
        jstat["fixed_space_dim"] = st.fixed_space_dim;
        if (st.pi) {
            json pi = json::array();
            for (const Rat& x : *st.pi) pi.push_back(rational_to_string(x));
            jstat["pi"] = pi;
        }
    }

    json root{{"tol", opt.tol},
              {"spec", json::parse(spec.canonical_json)},
              {"row_stochastic", t.row_stochastic},
              {"paths", vpaths},
              {"irreducibility", jirr},
              {"stationary", jstat},
              {"pass", all_pass}};
    try {
        write_file(out / "verification.json", root.dump(2) + "\n");
    } catch (const IoError& e) {
        log << e.what() << "\n";
        return kExitIoError;
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

const char* builtin_z4_affine_spec() {
    return R"({
  "ring": {"zn": 4},
  "module": {"free": 1},
  "walk": {"affine": {}},
  "P": {"weights": ["2/5", "1/5", "1/5", "1/5"]},
  "Q": {"weights": ["1/10", "3/10", "1/5", "2/5"]},
  "options": {"paths": ["general", "triple", "frobenius"]}
})";
}

int run_selftest(std::ostream& log) {
    fs::path dir = fs::temp_directory_path() / "ringwalk_selftest";
    ExperimentSpec spec = parse_spec(builtin_z4_affine_spec());

    RunOverrides ov;
    ov.out_dir = (dir / "clean").string();
    log << "selftest: verifying the bundled Z/4 affine case\n";
    int rc = run_experiment(spec, RunStage::Verify, ov, log);
    if (rc != kExitOk) {
        log << "selftest FAILED: clean run exited " << rc << "\n";
        return kExitVerifyFail;
    }

    // negative control: a 0.01 shift must be caught
    RunOverrides bad;
    bad.out_dir = (dir / "perturbed").string();
    bad.perturb = 0.01;
    log << "selftest: injecting a 0.01 eigenvalue perturbation (must fail)\n";
    int rc_bad = run_experiment(spec, RunStage::Verify, bad, log);
    if (rc_bad != kExitVerifyFail) {
        log << "selftest FAILED: perturbed run exited " << rc_bad << " instead of "
            << kExitVerifyFail << "\n";
        return kExitVerifyFail;
    }
    log << "selftest OK: clean case verified, perturbation detected\n";
    return kExitOk;
}

} // namespace ringwalk
