#include "ringwalk/walk.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ringwalk {

void WalkSpec::validate(const FiniteModule& v) const {
    p.validate();
    q.validate();
    if (p.n != v.n) throw DimensionMismatch("P has wrong length for module");
    if (q.n != v.ring->n) throw DimensionMismatch("Q has wrong length for ring");
    if (kind == WalkKind::CoinToss && (alpha < 0 || alpha > 1))
        throw ValidationError("alpha must lie in [0,1]");
    if (auto bad = validate_constant_on_associates(v, p))
        throw HypothesisError("P is not constant on associates: P(" + std::to_string(bad->first) +
                                  ") != P(" + std::to_string(bad->second) + ")",
                              bad->first, bad->second);
}

RatMat translation_matrix(const FiniteModule& v, const Distribution& p) {
    RatMat t(v.n, v.n);
    for (int x = 0; x < v.n; ++x)
        for (int b = 0; b < v.n; ++b) {
            if (p.weights[b] == 0) continue;
            t(x, v.addv(x, b)) += p.weights[b];
        }
    return t;
}

RatMat dilation_matrix(const FiniteModule& v, const Distribution& q) {
    RatMat t(v.n, v.n);
    for (int x = 0; x < v.n; ++x)
        for (int a = 0; a < v.ring->n; ++a) {
            if (q.weights[a] == 0) continue;
            t(x, v.act(a, x)) += q.weights[a];
        }
    return t;
}

namespace {

bool rows_sum_to_one(const RatMat& m) {
    for (int i = 0; i < m.rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < m.cols; ++j) {
            if (m(i, j) < 0) return false;
            s += m(i, j);
        }
        if (s != 1) return false;
    }
    return true;
}

TransitionMatrix wrap(const FiniteModule& v, RatMat m) {
    TransitionMatrix t;
    t.n = v.n;
    t.row_stochastic = rows_sum_to_one(m);
    t.labels = v.labels;
    t.entries = std::move(m);
    return t;
}

} // namespace

TransitionMatrix coin_toss_matrix(const FiniteModule& v, const Distribution& p,
                                  const Distribution& q, const Rat& alpha) {
    RatMat m = mat_add_scaled(alpha, translation_matrix(v, p), Rat(1) - alpha,
                              dilation_matrix(v, q));
    return wrap(v, std::move(m));
}

TransitionMatrix affine_matrix(const FiniteModule& v, const Distribution& p,
                               const Distribution& q) {
    // one step = dilate by Q, then translate by P
    RatMat m = mat_mul(dilation_matrix(v, q), translation_matrix(v, p));
    return wrap(v, std::move(m));
}

TransitionMatrix polynomial_operator_matrix(const FiniteModule& v, const Distribution& p,
                                            const Distribution& q,
                                            const std::vector<PolyTerm>& poly) {
    RatMat tp = translation_matrix(v, p);
    RatMat tq = dilation_matrix(v, q);
    int max_i = 0, max_j = 0;
    bool complex_coeffs = false;
    for (const PolyTerm& term : poly) {
        if (term.deg_p < 0 || term.deg_q < 0)
            throw ValidationError("polynomial walk: negative exponent");
        max_i = std::max(max_i, term.deg_p);
        max_j = std::max(max_j, term.deg_q);
        if (term.coeff.im != 0) complex_coeffs = true;
    }
    std::vector<RatMat> ppow{identity_matrix(v.n)}, qpow{identity_matrix(v.n)};
    for (int i = 1; i <= max_i; ++i) ppow.push_back(mat_mul(ppow.back(), tp));
    for (int j = 1; j <= max_j; ++j) qpow.push_back(mat_mul(qpow.back(), tq));

    // transition matrix of the operator x^i y^j is T_Q^j * T_P^i
    if (!complex_coeffs) {
        RatMat acc(v.n, v.n);
        for (const PolyTerm& term : poly) {
            RatMat t = mat_mul(qpow[term.deg_q], ppow[term.deg_p]);
            acc = mat_add_scaled(1, acc, term.coeff.re, t);
        }
        return wrap(v, std::move(acc));
    }
    CMat acc(v.n, v.n);
    for (const PolyTerm& term : poly) {
        CMat t = to_complex_matrix(mat_mul(qpow[term.deg_q], ppow[term.deg_p]));
        for (size_t i = 0; i < acc.a.size(); ++i) acc.a[i] = acc.a[i] + term.coeff * t.a[i];
    }
    TransitionMatrix t;
    t.n = v.n;
    t.row_stochastic = false;
    t.labels = v.labels;
    t.entries = std::move(acc);
    return t;
}

TransitionMatrix build_walk_matrix(const FiniteModule& v, const WalkSpec& spec) {
    spec.validate(v);
    switch (spec.kind) {
        case WalkKind::CoinToss:
            return coin_toss_matrix(v, spec.p, spec.q, spec.alpha);
        case WalkKind::Affine:
            return affine_matrix(v, spec.p, spec.q);
        case WalkKind::Polynomial:
            return polynomial_operator_matrix(v, spec.p, spec.q, spec.poly);
    }
    throw Error("unreachable walk kind");
}

namespace {

// digraph of states with an edge x -> y when the matrix entry is nonzero
std::vector<std::vector<int>> positive_digraph(const TransitionMatrix& t) {
    std::vector<std::vector<int>> adj(t.n);
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) {
            bool nonzero = t.is_complex() ? !t.cplx()(i, j).is_zero() : t.real()(i, j) != 0;
            if (nonzero) adj[i].push_back(j);
        }
    return adj;
}

// Kosaraju strongly connected components; returns component id per node.
std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int& count) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        // iterative post-order
        std::vector<std::pair<int, size_t>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx < adj[u].size()) {
                int w = adj[u][idx++];
                if (!seen[w]) {
                    seen[w] = true;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<std::vector<int>> radj(n);
    for (int u = 0; u < n; ++u)
        for (int w : adj[u]) radj[w].push_back(u);
    std::vector<int> comp(n, -1);
    count = 0;
    for (int i = n - 1; i >= 0; --i) {
        int s = order[i];
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : radj[u])
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return comp;
}

// gcd of cycle lengths within one SCC (0 if the component has no cycle)
int scc_period(const std::vector<std::vector<int>>& adj, const std::vector<int>& comp, int c,
               int root) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> level(n, -1);
    std::vector<int> queue{root};
    level[root] = 0;
    size_t head = 0;
    while (head < queue.size()) {
        int u = queue[head++];
        for (int w : adj[u]) {
            if (comp[w] != c) continue;
            if (level[w] < 0) {
                level[w] = level[u] + 1;
                queue.push_back(w);
            }
        }
    }
    int g = 0;
    for (int u : queue)
        for (int w : adj[u])
            if (comp[w] == c) g = std::gcd(g, level[u] + 1 - level[w]);
    return std::abs(g);
}

} // namespace

IrreducibilityReport irreducibility_report(const FiniteModule& v, const WalkSpec& spec,
                                           const TransitionMatrix& t) {
    IrreducibilityReport rep;

    // closure of supp(P) under addition reaches all of V?
    {
        std::set<int> gen{v.zero};
        std::vector<int> frontier{v.zero};
        std::vector<int> supp = spec.p.support();
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (int b : supp) {
                int y = v.addv(x, b);
                if (gen.insert(y).second) frontier.push_back(y);
            }
        }
        rep.p_support_generates = static_cast<int>(gen.size()) == v.n;
    }
    {
        std::vector<int> suppq = spec.q.support();
        rep.one_in_support_q =
            std::find(suppq.begin(), suppq.end(), v.ring->one) != suppq.end();
        // multiplicative closure of supp(Q), empty product included
        std::set<int> monoid{v.ring->one};
        std::vector<int> frontier{v.ring->one};
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (int a : suppq) {
                int y = v.ring->mulv(x, a);
                if (monoid.insert(y).second) frontier.push_back(y);
            }
        }
        rep.zero_in_monoid_q = monoid.count(v.ring->zero) > 0;
    }

    switch (spec.kind) {
        case WalkKind::CoinToss:
            rep.sufficient_irreducible =
                spec.alpha > 0 && spec.alpha < 1 && rep.p_support_generates;
            break;
        case WalkKind::Affine:
            rep.sufficient_irreducible = rep.p_support_generates && rep.one_in_support_q;
            break;
        case WalkKind::Polynomial:
            rep.sufficient_irreducible = false; // the proposition does not cover these
            break;
    }
    rep.sufficient_aperiodic = rep.sufficient_irreducible && rep.zero_in_monoid_q;

    auto adj = positive_digraph(t);
    int count = 0;
    std::vector<int> comp = scc_ids(adj, count);
    rep.exact_irreducible = count == 1;
    bool aperiodic = true;
    std::vector<int> root(count, -1);
    for (int u = 0; u < t.n; ++u)
        if (root[comp[u]] < 0) root[comp[u]] = u;
    for (int c = 0; c < count; ++c) {
        int period = scc_period(adj, comp, c, root[c]);
        if (period > 1) aperiodic = false; // period 0 = no cycle, vacuously fine
    }
    rep.exact_aperiodic = aperiodic;
    return rep;
}

} // namespace ringwalk
