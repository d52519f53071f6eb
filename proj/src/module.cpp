#include "ringwalk/module.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace ringwalk {

void FiniteModule::validate() const {
    if (!ring) throw ValidationError("module has no ring");
    const int nr = ring->n;
    if (add.size() != static_cast<size_t>(n) * n || neg.size() != static_cast<size_t>(n) ||
        action.size() != static_cast<size_t>(nr) * n)
        throw ValidationError(name + ": table sizes inconsistent");
    for (int a = 0; a < n; ++a) {
        if (addv(a, zero) != a) throw ValidationError(name + ": zero not identity");
        if (addv(a, neg[a]) != zero) throw ValidationError(name + ": neg wrong");
        for (int b = 0; b < n; ++b)
            if (addv(a, b) != addv(b, a)) throw ValidationError(name + ": addition not commutative");
        if (act(ring->one, a) != a) throw ValidationError(name + ": 1·v != v");
    }
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (addv(a, addv(b, c)) != addv(addv(a, b), c))
                        throw ValidationError(name + ": addition not associative");
    } else {
        std::mt19937 rng(99u);
        std::uniform_int_distribution<int> pv(0, n - 1);
        for (int t = 0; t < 20000; ++t) {
            int a = pv(rng), b = pv(rng), c = pv(rng);
            if (addv(a, addv(b, c)) != addv(addv(a, b), c))
                throw ValidationError(name + ": addition not associative");
        }
    }
    auto check = [&](int r, int s, int v, int w) {
        if (act(ring->addv(r, s), v) != addv(act(r, v), act(s, v)))
            throw ValidationError(name + ": (r+s)v != rv+sv");
        if (act(r, addv(v, w)) != addv(act(r, v), act(r, w)))
            throw ValidationError(name + ": r(v+w) != rv+rw");
        if (act(ring->mulv(r, s), v) != act(r, act(s, v)))
            throw ValidationError(name + ": (rs)v != r(sv)");
    };
    if (static_cast<long long>(nr) * n <= 4096) {
        for (int r = 0; r < nr; ++r)
            for (int s = 0; s < nr; ++s)
                for (int v = 0; v < n; ++v)
                    for (int w = 0; w < n; ++w) check(r, s, v, w);
    } else {
        std::mt19937 rng(54321u);
        std::uniform_int_distribution<int> pr(0, nr - 1), pv(0, n - 1);
        for (int t = 0; t < 20000; ++t) check(pr(rng), pr(rng), pv(rng), pv(rng));
    }
}

ModulePtr build_free_module(const RingPtr& r, int d) {
    if (d < 1) throw ValidationError("build_free_module: d must be >= 1");
    int n = 1;
    for (int i = 0; i < d; ++i) n *= r->n;
    auto decode = [&](int idx, std::vector<int>& out) {
        for (int i = d - 1; i >= 0; --i) { // last coordinate fastest
            out[i] = idx % r->n;
            idx /= r->n;
        }
    };
    auto encode = [&](const std::vector<int>& tup) {
        int idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * r->n + tup[i];
        return idx;
    };
    auto m = std::make_shared<FiniteModule>();
    m->ring = r;
    m->n = n;
    m->add.resize(static_cast<size_t>(n) * n);
    m->neg.resize(n);
    m->action.resize(static_cast<size_t>(r->n) * n);
    m->labels.resize(n);
    std::vector<int> ta(d), tb(d), tc(d);
    for (int a = 0; a < n; ++a) {
        decode(a, ta);
        for (int i = 0; i < d; ++i) tc[i] = r->negv(ta[i]);
        m->neg[a] = encode(tc);
        if (d == 1) {
            m->labels[a] = r->labels[ta[0]];
        } else {
            std::ostringstream lab;
            lab << "(";
            for (int i = 0; i < d; ++i) lab << (i ? "," : "") << r->labels[ta[i]];
            lab << ")";
            m->labels[a] = lab.str();
        }
        for (int b = 0; b < n; ++b) {
            decode(b, tb);
            for (int i = 0; i < d; ++i) tc[i] = r->addv(ta[i], tb[i]);
            m->add[static_cast<size_t>(a) * n + b] = encode(tc);
        }
        for (int s = 0; s < r->n; ++s) {
            for (int i = 0; i < d; ++i) tc[i] = r->mulv(s, ta[i]);
            m->action[static_cast<size_t>(s) * n + a] = encode(tc);
        }
    }
    m->zero = 0;
    m->name = d == 1 ? r->name : r->name + "^" + std::to_string(d);
    return m;
}

ModulePtr build_cyclic_module(const RingPtr& r, const Ideal& ideal) {
    if (!is_ideal(*r, ideal.members))
        throw ValidationError("build_cyclic_module: member set is not an ideal");
    QuotientRing q = quotient_ring(r, ideal);
    auto m = std::make_shared<FiniteModule>();
    m->ring = r;
    m->n = q.ring->n;
    m->add = q.ring->add;
    m->neg = q.ring->neg;
    m->zero = q.ring->zero;
    m->labels = q.ring->labels;
    m->action.resize(static_cast<size_t>(r->n) * m->n);
    for (int s = 0; s < r->n; ++s)
        for (int v = 0; v < m->n; ++v)
            m->action[static_cast<size_t>(s) * m->n + v] = q.to_index[r->mulv(s, q.rep[v])];
    m->name = r->name + "/I" + std::to_string(ideal.size());
    return m;
}

ModulePtr direct_sum(const std::vector<ModulePtr>& modules) {
    if (modules.empty()) throw ValidationError("direct_sum: empty summand list");
    const RingPtr& r = modules.front()->ring;
    for (const auto& m : modules)
        if (m->ring.get() != r.get())
            throw ValidationError("direct_sum: summands over different rings");
    if (modules.size() == 1) return modules.front();

    const int t = static_cast<int>(modules.size());
    int n = 1;
    for (const auto& m : modules) n *= m->n;
    auto decode = [&](int idx, std::vector<int>& out) {
        for (int i = t - 1; i >= 0; --i) {
            out[i] = idx % modules[i]->n;
            idx /= modules[i]->n;
        }
    };
    auto encode = [&](const std::vector<int>& tup) {
        int idx = 0;
        for (int i = 0; i < t; ++i) idx = idx * modules[i]->n + tup[i];
        return idx;
    };
    auto m = std::make_shared<FiniteModule>();
    m->ring = r;
    m->n = n;
    m->add.resize(static_cast<size_t>(n) * n);
    m->neg.resize(n);
    m->action.resize(static_cast<size_t>(r->n) * n);
    m->labels.resize(n);
    std::vector<int> ta(t), tb(t), tc(t);
    for (int a = 0; a < n; ++a) {
        decode(a, ta);
        for (int i = 0; i < t; ++i) tc[i] = modules[i]->negv(ta[i]);
        m->neg[a] = encode(tc);
        std::ostringstream lab;
        lab << "(";
        for (int i = 0; i < t; ++i) lab << (i ? ";" : "") << modules[i]->labels[ta[i]];
        lab << ")";
        m->labels[a] = lab.str();
        for (int b = 0; b < n; ++b) {
            decode(b, tb);
            for (int i = 0; i < t; ++i) tc[i] = modules[i]->addv(ta[i], tb[i]);
            m->add[static_cast<size_t>(a) * n + b] = encode(tc);
        }
        for (int s = 0; s < r->n; ++s) {
            for (int i = 0; i < t; ++i) tc[i] = modules[i]->act(s, ta[i]);
            m->action[static_cast<size_t>(s) * n + a] = encode(tc);
        }
    }
    m->zero = 0;
    std::string nm;
    for (int i = 0; i < t; ++i) nm += (i ? " (+) " : "") + modules[i]->name;
    m->name = nm;
    return m;
}

Ideal annihilator_of(const FiniteModule& v, int elem) {
    std::vector<int> members;
    for (int a = 0; a < v.ring->n; ++a)
        if (v.act(a, elem) == v.zero) members.push_back(a);
    return Ideal{v.ring, members};
}

std::vector<int> cyclic_span(const FiniteModule& v, int elem) {
    std::set<int> s;
    for (int a = 0; a < v.ring->n; ++a) s.insert(v.act(a, elem));
    return {s.begin(), s.end()};
}

std::vector<CyclicSubmodule> cyclic_submodules(const ModulePtr& v) {
    std::map<std::vector<int>, int> seen; // members -> least generator
    for (int x = 0; x < v->n; ++x) {
        auto span = cyclic_span(*v, x);
        auto it = seen.find(span);
        if (it == seen.end()) seen.emplace(std::move(span), x);
    }
    std::vector<CyclicSubmodule> out;
    out.reserve(seen.size());
    for (auto& [members, gen] : seen)
        out.push_back(CyclicSubmodule{v, gen, members, annihilator_of(*v, gen)});
    std::sort(out.begin(), out.end(), [](const CyclicSubmodule& a, const CyclicSubmodule& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.generator < b.generator;
    });
    return out;
}

std::vector<int> associates_orbit(const FiniteModule& v, const UnitGroup& u, int elem) {
    std::set<int> s;
    for (int unit : u.members) s.insert(v.act(unit, elem));
    return {s.begin(), s.end()};
}

bool check_cyclic_equals_unit_orbit(const FiniteModule& v) {
    UnitGroup u = units(v.ring);
    // identify each element's cyclic span and unit orbit, then compare the
    // induced partitions pairwise
    std::vector<int> span_id(v.n), orbit_id(v.n);
    {
        std::map<std::vector<int>, int> span_ids, orbit_ids;
        for (int x = 0; x < v.n; ++x) {
            auto sp = cyclic_span(v, x);
            span_id[x] = span_ids.emplace(std::move(sp), static_cast<int>(span_ids.size())).first->second;
            auto ob = associates_orbit(v, u, x);
            orbit_id[x] = orbit_ids.emplace(std::move(ob), static_cast<int>(orbit_ids.size())).first->second;
        }
    }
    for (int x = 0; x < v.n; ++x)
        for (int y = 0; y < v.n; ++y)
            if ((span_id[x] == span_id[y]) != (orbit_id[x] == orbit_id[y])) return false;
    return true;
}

int minimal_fixing_idempotent(const FiniteModule& v, int elem) {
    int e = v.ring->one; // always fixes
    for (int f : idempotents(*v.ring))
        if (v.act(f, elem) == elem) e = v.ring->mulv(e, f);
    return e;
}

} // namespace ringwalk
