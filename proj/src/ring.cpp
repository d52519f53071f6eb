#include "ringwalk/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace ringwalk {

namespace {

void check_triple(const FiniteRing& r, int a, int b, int c) {
    if (r.addv(a, r.addv(b, c)) != r.addv(r.addv(a, b), c))
        throw ValidationError(r.name + ": addition not associative");
    if (r.mulv(a, r.mulv(b, c)) != r.mulv(r.mulv(a, b), c))
        throw ValidationError(r.name + ": multiplication not associative");
    if (r.mulv(a, r.addv(b, c)) != r.addv(r.mulv(a, b), r.mulv(a, c)))
        throw ValidationError(r.name + ": distributivity fails");
}

} // namespace

void FiniteRing::validate() const {
    if (n <= 0) throw ValidationError("ring must have at least one element");
    size_t nn = static_cast<size_t>(n) * n;
    if (add.size() != nn || mul.size() != nn || neg.size() != static_cast<size_t>(n))
        throw ValidationError(name + ": table sizes inconsistent");
    for (int x : add)
        if (x < 0 || x >= n) throw ValidationError(name + ": add table out of range");
    for (int x : mul)
        if (x < 0 || x >= n) throw ValidationError(name + ": mul table out of range");
    for (int a = 0; a < n; ++a) {
        if (addv(a, zero) != a) throw ValidationError(name + ": zero not additive identity");
        if (addv(a, neg[a]) != zero) throw ValidationError(name + ": neg table wrong");
        if (mulv(a, one) != a) throw ValidationError(name + ": one not multiplicative identity");
        for (int b = 0; b < n; ++b) {
            if (addv(a, b) != addv(b, a)) throw ValidationError(name + ": addition not commutative");
            if (mulv(a, b) != mulv(b, a)) throw ValidationError(name + ": multiplication not commutative");
        }
    }
    if (n <= 256) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check_triple(*this, a, b, c);
    } else {
        std::mt19937 rng(12345u); // fixed seed, deterministic
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 20000; ++t) check_triple(*this, pick(rng), pick(rng), pick(rng));
    }
}

bool Ideal::contains(int a) const {
    return std::binary_search(members.begin(), members.end(), a);
}

RingPtr build_zn(int n) {
    if (n < 1) throw ValidationError("build_zn: n must be >= 1");
    auto r = std::make_shared<FiniteRing>();
    r->n = n;
    r->add.resize(static_cast<size_t>(n) * n);
    r->mul.resize(static_cast<size_t>(n) * n);
    r->neg.resize(n);
    for (int a = 0; a < n; ++a) {
        r->neg[a] = (n - a) % n;
        for (int b = 0; b < n; ++b) {
            r->add[static_cast<size_t>(a) * n + b] = (a + b) % n;
            r->mul[static_cast<size_t>(a) * n + b] = (a * b) % n;
        }
    }
    r->zero = 0;
    r->one = n == 1 ? 0 : 1;
    r->name = "Z/" + std::to_string(n);
    r->labels.resize(n);
    for (int a = 0; a < n; ++a) r->labels[a] = std::to_string(a);
    return r;
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over Z/p as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, int p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    return poly_trim(h);
}

// Remainder of f modulo monic divisor m.
Poly poly_rem(Poly f, const Poly& m, int p) {
    f = poly_trim(std::move(f));
    int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dm) {
        int shift = static_cast<int>(f.size()) - 1 - dm;
        int c = f.back();
        for (int i = 0; i <= dm; ++i) f[shift + i] = ((f[shift + i] - c * m[i]) % p + p) % p;
        f = poly_trim(std::move(f));
    }
    return f;
}

bool poly_irreducible(const Poly& m, int p) {
    int k = static_cast<int>(m.size()) - 1;
    // exhaustive scan of monic divisor candidates of degree 1..k/2
    for (int d = 1; 2 * d <= k; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            int c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            if (poly_rem(m, g, p).empty()) return false;
        }
    }
    return true;
}

std::string poly_label(const Poly& f) {
    if (poly_trim(f).empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0 || f[i] != 1) out << f[i];
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
    }
    return out.str();
}

} // namespace

RingPtr build_gf(int p, int k, const std::vector<int>& poly) {
    if (!is_prime(p)) throw ValidationError("build_gf: p must be prime");
    if (k < 1) throw ValidationError("build_gf: k must be >= 1");
    Poly m = poly;
    for (int& c : m) c = ((c % p) + p) % p;
    if (static_cast<int>(m.size()) != k + 1 || m[k] != 1)
        throw ValidationError("build_gf: poly must be monic of degree k");
    if (!poly_irreducible(m, p))
        throw ReduciblePolyError("build_gf: polynomial is reducible over Z/" + std::to_string(p));

    int n = 1;
    for (int i = 0; i < k; ++i) n *= p;
    auto decode = [&](int idx) {
        Poly f(k, 0);
        for (int i = 0; i < k; ++i) {
            f[i] = idx % p;
            idx /= p;
        }
        return f;
    };
    auto encode = [&](const Poly& f) {
        int idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * p + (i < static_cast<int>(f.size()) ? f[i] : 0);
        return idx;
    };

    auto r = std::make_shared<FiniteRing>();
    r->n = n;
    r->add.resize(static_cast<size_t>(n) * n);
    r->mul.resize(static_cast<size_t>(n) * n);
    r->neg.resize(n);
    r->labels.resize(n);
    for (int a = 0; a < n; ++a) {
        Poly fa = decode(a);
        Poly na(k);
        for (int i = 0; i < k; ++i) na[i] = (p - fa[i]) % p;
        r->neg[a] = encode(na);
        r->labels[a] = poly_label(fa);
        for (int b = 0; b < n; ++b) {
            Poly fb = decode(b);
            Poly s(k);
            for (int i = 0; i < k; ++i) s[i] = (fa[i] + fb[i]) % p;
            r->add[static_cast<size_t>(a) * n + b] = encode(s);
            r->mul[static_cast<size_t>(a) * n + b] = encode(poly_rem(poly_mul(fa, fb, p), m, p));
        }
    }
    r->zero = 0;
    r->one = encode({1});
    r->name = "GF(" + std::to_string(n) + ")";
    return r;
}

RingPtr build_product(const std::vector<RingPtr>& factors) {
    if (factors.empty()) throw ValidationError("build_product: empty factor list");
    int n = 1;
    for (const auto& f : factors) n *= f->n;
    const int t = static_cast<int>(factors.size());
    auto decode = [&](int idx, std::vector<int>& out) {
        for (int i = t - 1; i >= 0; --i) { // last coordinate fastest
            out[i] = idx % factors[i]->n;
            idx /= factors[i]->n;
        }
    };
    auto encode = [&](const std::vector<int>& tup) {
        int idx = 0;
        for (int i = 0; i < t; ++i) idx = idx * factors[i]->n + tup[i];
        return idx;
    };

    auto r = std::make_shared<FiniteRing>();
    r->n = n;
    r->add.resize(static_cast<size_t>(n) * n);
    r->mul.resize(static_cast<size_t>(n) * n);
    r->neg.resize(n);
    r->labels.resize(n);
    std::vector<int> ta(t), tb(t), tc(t);
    for (int a = 0; a < n; ++a) {
        decode(a, ta);
        for (int i = 0; i < t; ++i) tc[i] = factors[i]->negv(ta[i]);
        r->neg[a] = encode(tc);
        std::ostringstream lab;
        lab << "(";
        for (int i = 0; i < t; ++i) lab << (i ? "|" : "") << factors[i]->labels[ta[i]];
        lab << ")";
        r->labels[a] = lab.str();
        for (int b = 0; b < n; ++b) {
            decode(b, tb);
            for (int i = 0; i < t; ++i) tc[i] = factors[i]->addv(ta[i], tb[i]);
            r->add[static_cast<size_t>(a) * n + b] = encode(tc);
            for (int i = 0; i < t; ++i) tc[i] = factors[i]->mulv(ta[i], tb[i]);
            r->mul[static_cast<size_t>(a) * n + b] = encode(tc);
        }
    }
    std::vector<int> ones(t);
    for (int i = 0; i < t; ++i) ones[i] = factors[i]->one;
    r->zero = 0;
    r->one = encode(ones);
    std::string nm;
    for (int i = 0; i < t; ++i) nm += (i ? " x " : "") + factors[i]->name;
    r->name = nm;
    return r;
}

QuotientRing quotient_ring(const RingPtr& r, const Ideal& ideal) {
    if (!is_ideal(*r, ideal.members))
        throw ValidationError("quotient_ring: member set is not an ideal of " + r->name);
    const int n = r->n;
    std::vector<int> to_rep(n, -1);
    std::vector<int> reps;
    for (int a = 0; a < n; ++a) {
        if (to_rep[a] >= 0) continue;
        // coset a + I; a is its least element since we scan ascending
        reps.push_back(a);
        for (int x : ideal.members) to_rep[r->addv(a, x)] = a;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<int> to_index(n);
    std::vector<int> index_of_rep(n, -1);
    for (int i = 0; i < q; ++i) index_of_rep[reps[i]] = i;
    for (int a = 0; a < n; ++a) to_index[a] = index_of_rep[to_rep[a]];

    auto ring = std::make_shared<FiniteRing>();
    ring->n = q;
    ring->add.resize(static_cast<size_t>(q) * q);
    ring->mul.resize(static_cast<size_t>(q) * q);
    ring->neg.resize(q);
    ring->labels.resize(q);
    for (int i = 0; i < q; ++i) {
        ring->neg[i] = to_index[r->negv(reps[i])];
        ring->labels[i] = r->labels[reps[i]] + "~";
        for (int j = 0; j < q; ++j) {
            ring->add[static_cast<size_t>(i) * q + j] = to_index[r->addv(reps[i], reps[j])];
            ring->mul[static_cast<size_t>(i) * q + j] = to_index[r->mulv(reps[i], reps[j])];
        }
    }
    ring->zero = to_index[r->zero];
    ring->one = to_index[r->one];
    ring->name = r->name + "/(" + std::to_string(ideal.size()) + " elts)";
    return QuotientRing{ring, to_rep, to_index, reps};
}

UnitGroup units(const RingPtr& r) {
    UnitGroup u;
    u.ring = r;
    u.inverse.assign(r->n, -1);
    for (int a = 0; a < r->n; ++a) {
        for (int b = 0; b < r->n; ++b)
            if (r->mulv(a, b) == r->one) {
                u.inverse[a] = b;
                break;
            }
        if (u.inverse[a] >= 0) u.members.push_back(a);
    }
    return u;
}

std::vector<int> idempotents(const FiniteRing& r) {
    std::vector<int> out;
    for (int e = 0; e < r.n; ++e)
        if (r.mulv(e, e) == e) out.push_back(e);
    return out;
}

Ideal principal_ideal(const RingPtr& r, int a) {
    std::set<int> members;
    for (int x = 0; x < r->n; ++x) members.insert(r->mulv(x, a));
    return Ideal{r, std::vector<int>(members.begin(), members.end())};
}

bool is_ideal(const FiniteRing& r, const std::vector<int>& members) {
    if (!std::is_sorted(members.begin(), members.end())) return false;
    auto in = [&](int x) { return std::binary_search(members.begin(), members.end(), x); };
    if (!in(r.zero)) return false;
    for (int a : members) {
        if (!in(r.negv(a))) return false;
        for (int b : members)
            if (!in(r.addv(a, b))) return false;
        for (int x = 0; x < r.n; ++x)
            if (!in(r.mulv(x, a))) return false;
    }
    return true;
}

std::vector<int> corner_units(const FiniteRing& r, int e) {
    if (r.mulv(e, e) != e) throw ValidationError("corner_units: e is not idempotent");
    std::vector<int> corner;
    for (int x = 0; x < r.n; ++x)
        if (r.mulv(x, e) == x) corner.push_back(x); // x in Re iff xe = x
    std::vector<int> out;
    for (int a : corner) {
        for (int b : corner)
            if (r.mulv(a, b) == e) {
                out.push_back(a);
                break;
            }
    }
    return out;
}

} // namespace ringwalk
