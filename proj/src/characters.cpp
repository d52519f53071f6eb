#include "ringwalk/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ringwalk {

std::complex<double> Angle::value() const {
    // exact values on the axes keep Fourier sums clean
    if (den == 1) return {1.0, 0.0};
    if (den == 2 && num == 1) return {-1.0, 0.0};
    if (den == 4 && num == 1) return {0.0, 1.0};
    if (den == 4 && num == 3) return {0.0, -1.0};
    double theta = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

Angle make_angle(long num, long den) {
    if (den <= 0) throw Error("make_angle: nonpositive denominator");
    num %= den;
    if (num < 0) num += den;
    long g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

Angle angle_add(Angle a, Angle b) {
    long l = std::lcm(a.den, b.den);
    return make_angle(a.num * (l / a.den) + b.num * (l / b.den), l);
}

Angle angle_scale(Angle a, long k) {
    long kk = ((k % a.den) + a.den) % a.den;
    return make_angle(a.num * kk, a.den);
}

int GroupTable::order_of(int a) const {
    int x = a, ord = 1;
    while (x != id) {
        x = opv(x, a);
        ++ord;
        if (ord > n) throw ValidationError("order_of: no finite order; table is not a group");
    }
    return ord;
}

void GroupTable::validate_abelian_group() const {
    if (n <= 0 || op.size() != static_cast<size_t>(n) * n)
        throw ValidationError("group table sizes inconsistent");
    for (int x : op)
        if (x < 0 || x >= n) throw ValidationError("group table entry out of range");
    for (int a = 0; a < n; ++a) {
        if (opv(a, id) != a || opv(id, a) != a)
            throw ValidationError("claimed identity is not an identity");
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            if (opv(a, b) == id) {
                has_inverse = true;
                break;
            }
        if (!has_inverse) throw ValidationError("element without inverse; not a group");
        for (int b = 0; b < n; ++b)
            if (opv(a, b) != opv(b, a)) throw ValidationError("group is not abelian");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (opv(a, opv(b, c)) != opv(opv(a, b), c))
                    throw ValidationError("group operation not associative");
}

GroupTable additive_group(const FiniteModule& v) {
    GroupTable g;
    g.n = v.n;
    g.op = v.add;
    g.id = v.zero;
    g.inv = v.neg;
    g.element.resize(v.n);
    std::iota(g.element.begin(), g.element.end(), 0);
    return g;
}

GroupTable additive_group(const FiniteRing& r) {
    GroupTable g;
    g.n = r.n;
    g.op = r.add;
    g.id = r.zero;
    g.inv = r.neg;
    g.element.resize(r.n);
    std::iota(g.element.begin(), g.element.end(), 0);
    return g;
}

GroupTable multiplicative_group(const FiniteRing& r, const std::vector<int>& members, int identity) {
    GroupTable g;
    g.n = static_cast<int>(members.size());
    g.element = members;
    std::vector<int> local(r.n, -1);
    for (int i = 0; i < g.n; ++i) local[members[i]] = i;
    g.op.resize(static_cast<size_t>(g.n) * g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            int prod = r.mulv(members[i], members[j]);
            if (local[prod] < 0)
                throw ValidationError("multiplicative_group: member set not closed");
            g.op[static_cast<size_t>(i) * g.n + j] = local[prod];
        }
    if (local[identity] < 0) throw ValidationError("multiplicative_group: identity not a member");
    g.id = local[identity];
    g.inv.resize(g.n, -1);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (g.opv(i, j) == g.id) {
                g.inv[i] = j;
                break;
            }
    return g;
}

std::vector<int> AbelianPresentation::coords_of(int x) const {
    std::vector<int> c(t());
    for (int i = 0; i < t(); ++i) c[i] = coord[static_cast<size_t>(x) * t() + i];
    return c;
}

namespace {

struct RawDecomp {
    std::vector<int> basis;  // local indices
    std::vector<int> orders; // descending divisibility (exponent first)
};

// Recursive greedy decomposition. Returns basis/orders with the
// largest-order generator first.
RawDecomp decompose(const GroupTable& g) {
    if (g.n == 1) return {};
    int best = -1, best_ord = 0;
    for (int a = 0; a < g.n; ++a) {
        int o = g.order_of(a);
        if (o > best_ord) {
            best_ord = o;
            best = a;
        }
    }
    // cyclic subgroup generated by the maximal-order element
    std::vector<int> cyc;
    {
        int x = g.id;
        do {
            cyc.push_back(x);
            x = g.opv(x, best);
        } while (x != g.id);
    }
    std::sort(cyc.begin(), cyc.end());

    // quotient by the cyclic subgroup, least representative per coset
    std::vector<int> to_rep(g.n, -1);
    std::vector<int> reps;
    for (int a = 0; a < g.n; ++a) {
        if (to_rep[a] >= 0) continue;
        reps.push_back(a);
        for (int c : cyc) to_rep[g.opv(a, c)] = a;
    }
    std::vector<int> rep_index(g.n, -1);
    for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);

    GroupTable q;
    q.n = static_cast<int>(reps.size());
    q.op.resize(static_cast<size_t>(q.n) * q.n);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            q.op[static_cast<size_t>(i) * q.n + j] = rep_index[to_rep[g.opv(reps[i], reps[j])]];
    q.id = rep_index[to_rep[g.id]];
    q.inv.assign(q.n, -1);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            if (q.opv(i, j) == q.id) {
                q.inv[i] = j;
                break;
            }

    RawDecomp sub = decompose(q);

    RawDecomp out;
    out.basis.push_back(best);
    out.orders.push_back(best_ord);
    for (size_t i = 0; i < sub.basis.size(); ++i) {
        int qrep = reps[sub.basis[i]];
        int want = sub.orders[i];
        // exhaustive scan of the coset for a lift of the right order
        int lift = -1;
        for (int c : cyc) {
            int cand = g.opv(qrep, c);
            if (g.order_of(cand) == want && (lift < 0 || cand < lift)) lift = cand;
        }
        if (lift < 0) throw ValidationError("invariant_factors: no lift found (not a group?)");
        out.basis.push_back(lift);
        out.orders.push_back(want);
    }
    return out;
}

} // namespace

AbelianPresentation invariant_factors(const GroupTable& g) {
    g.validate_abelian_group();
    RawDecomp raw = decompose(g);
    AbelianPresentation pres;
    pres.group_size = g.n;
    const int t = static_cast<int>(raw.basis.size());
    // spec order: ascending divisibility chain d_1 | d_2 | ... | d_t
    pres.basis.assign(raw.basis.rbegin(), raw.basis.rend());
    pres.orders.assign(raw.orders.rbegin(), raw.orders.rend());
    pres.coord.assign(static_cast<size_t>(g.n) * t, 0);

    std::vector<bool> seen(g.n, false);
    std::vector<int> tuple(t, 0);
    long combos = 1;
    for (int d : pres.orders) combos *= d;
    if (combos != g.n)
        throw ValidationError("invariant_factors: order product mismatch");
    for (long it = 0; it < combos; ++it) {
        int x = g.id;
        for (int i = 0; i < t; ++i) {
            int gi = pres.basis[i];
            for (int rep = 0; rep < tuple[i]; ++rep) x = g.opv(x, gi);
        }
        if (seen[x]) throw ValidationError("invariant_factors: coordinates not bijective");
        seen[x] = true;
        for (int i = 0; i < t; ++i) pres.coord[static_cast<size_t>(x) * t + i] = tuple[i];
        for (int i = t - 1; i >= 0; --i) { // mixed-radix increment, last fastest
            if (++tuple[i] < pres.orders[i]) break;
            tuple[i] = 0;
        }
    }
    return pres;
}

std::vector<int> CharacterGroup::exponents_of(int chi) const {
    const int t = pres->t();
    std::vector<int> e(t);
    for (int i = t - 1; i >= 0; --i) {
        e[i] = chi % pres->orders[i];
        chi /= pres->orders[i];
    }
    return e;
}

int CharacterGroup::index_of(const std::vector<int>& exponents) const {
    int idx = 0;
    for (int i = 0; i < pres->t(); ++i) idx = idx * pres->orders[i] + exponents[i];
    return idx;
}

Angle CharacterGroup::evaluate(int chi, int x) const {
    const int t = pres->t();
    std::vector<int> e = exponents_of(chi);
    Angle a{0, 1};
    for (int i = 0; i < t; ++i) {
        long ai = pres->coord[static_cast<size_t>(x) * t + i];
        a = angle_add(a, make_angle(static_cast<long>(e[i]) * ai, pres->orders[i]));
    }
    return a;
}

CharacterGroup character_group(std::shared_ptr<const AbelianPresentation> pres) {
    return CharacterGroup{std::move(pres)};
}

Angle evaluate(const Character& chi, int x) {
    Angle a{0, 1};
    for (int i = 0; i < chi.pres->t(); ++i) {
        long ai = chi.pres->coord[static_cast<size_t>(x) * chi.pres->t() + i];
        a = angle_add(a, make_angle(static_cast<long>(chi.exponents[i]) * ai, chi.pres->orders[i]));
    }
    return a;
}

DualModule dual_module(const ModulePtr& v) {
    DualModule d;
    d.base = v;
    auto pres = std::make_shared<AbelianPresentation>(invariant_factors(additive_group(*v)));
    d.pres = pres;
    d.chars = character_group(pres);
    const int n = v->n;
    const int t = pres->t();
    const RingPtr& r = v->ring;

    auto mod = std::make_shared<FiniteModule>();
    mod->ring = r;
    mod->n = n;
    mod->zero = 0; // trivial character
    mod->add.resize(static_cast<size_t>(n) * n);
    mod->neg.resize(n);
    mod->action.resize(static_cast<size_t>(r->n) * n);
    mod->labels.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ei = d.chars.exponents_of(i);
        std::string lab = "chi[";
        for (int k = 0; k < t; ++k) lab += (k ? "," : "") + std::to_string(ei[k]);
        lab += "]";
        mod->labels[i] = lab;
        std::vector<int> tmp(t);
        for (int k = 0; k < t; ++k) tmp[k] = (pres->orders[k] - ei[k]) % pres->orders[k];
        mod->neg[i] = d.chars.index_of(tmp);
        for (int j = 0; j < n; ++j) {
            std::vector<int> ej = d.chars.exponents_of(j);
            for (int k = 0; k < t; ++k) tmp[k] = (ei[k] + ej[k]) % pres->orders[k];
            mod->add[static_cast<size_t>(i) * n + j] = d.chars.index_of(tmp);
        }
        // (r*chi)(v) = chi(rv): read off the exponents at the basis elements
        for (int s = 0; s < r->n; ++s) {
            for (int k = 0; k < t; ++k) {
                Angle a = d.chars.evaluate(i, v->act(s, pres->basis[k]));
                long dk = pres->orders[k];
                if (dk % a.den != 0)
                    throw ValidationError("dual_module: basis value not a d_k-th root of unity");
                tmp[k] = static_cast<int>((a.num * (dk / a.den)) % dk);
            }
            mod->action[static_cast<size_t>(s) * n + i] = d.chars.index_of(tmp);
        }
    }
    mod->name = "dual(" + v->name + ")";
    mod->validate();
    d.mod = mod;
    return d;
}

std::vector<int> stabilizer_in_units(const DualModule& d, int chi,
                                     const std::vector<int>& unit_members) {
    std::vector<int> out;
    for (int u : unit_members)
        if (d.mod->act(u, chi) == chi) out.push_back(u);
    return out;
}

} // namespace ringwalk
