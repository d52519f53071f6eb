#include "ringwalk/verify.hpp"

#include <algorithm>
#include <cmath>

namespace ringwalk {

namespace {

std::vector<std::complex<double>> traces_as_complex(const TransitionMatrix& a, int kmax) {
    std::vector<std::complex<double>> out;
    out.reserve(kmax);
    if (a.is_complex()) {
        for (const CRat& t : trace_powers(a.cplx(), kmax)) out.push_back(t.to_complex());
    } else {
        for (const Rat& t : trace_powers(a.real(), kmax)) out.emplace_back(to_double(t), 0.0);
    }
    return out;
}

// Elementary symmetric polynomials from power sums via Newton's identities,
// exactly over complex rationals.
std::vector<CRat> newton_elementary(const std::vector<CRat>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<CRat> e(n + 1);
    e[0] = CRat(Rat(1));
    for (int k = 1; k <= n; ++k) {
        CRat acc;
        int sign = 1;
        for (int i = 1; i <= k; ++i) {
            CRat term = e[k - i] * p[i - 1];
            if (sign < 0) term = CRat(Rat(0)) - term;
            acc = acc + term;
            sign = -sign;
        }
        e[k] = CRat(acc.re / k, acc.im / k);
    }
    return e;
}

double binom(int n, int k) {
    double b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

} // namespace

VerificationReport verify_power_sums(const TransitionMatrix& a, const SpectrumReport& s,
                                     double tol) {
    const int n = a.n;
    if (s.total_multiplicity() != n)
        throw DimensionMismatch("spectrum carries " + std::to_string(s.total_multiplicity()) +
                                " eigenvalues for a " + std::to_string(n) + "-state matrix");
    VerificationReport rep;
    auto traces = traces_as_complex(a, n);
    std::vector<std::complex<double>> lambdas = s.eigenvalues();
    std::vector<std::complex<double>> pows = lambdas;
    rep.power_sum_residuals.reserve(n);
    for (int k = 1; k <= n; ++k) {
        std::complex<double> sum = 0;
        for (const auto& z : pows) sum += z;
        double r = std::abs(traces[k - 1] - sum);
        rep.power_sum_residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
        if (k < n)
            for (size_t i = 0; i < pows.size(); ++i) pows[i] *= lambdas[i];
    }
    rep.pass = rep.max_residual < tol;

    if (n <= 12) {
        // cross-check the characteristic polynomial coefficients too
        std::vector<CRat> p;
        if (a.is_complex())
            p = trace_powers(a.cplx(), n);
        else
            for (const Rat& t : trace_powers(a.real(), n)) p.emplace_back(t, Rat(0));
        std::vector<CRat> exact = newton_elementary(p);
        // elementary symmetric functions of the predicted eigenvalues
        std::vector<std::complex<double>> coeff(n + 1, 0.0);
        coeff[0] = 1.0;
        int used = 0;
        for (const auto& z : lambdas) {
            ++used;
            for (int k = used; k >= 1; --k) coeff[k] += z * coeff[k - 1];
        }
        bool ok = true;
        for (int k = 1; k <= n; ++k) {
            double scale = std::max(1.0, binom(n, k));
            if (std::abs(exact[k].to_complex() - coeff[k]) > tol * scale) ok = false;
        }
        rep.char_poly_match = ok;
    }

    double worst = 0;
    bool skipped_designated = false;
    for (const auto& it : s.items) {
        int copies = it.multiplicity;
        if (it.unit_item && !skipped_designated) {
            skipped_designated = true;
            --copies;
        }
        if (copies > 0) worst = std::max(worst, std::abs(it.value));
    }
    rep.spectral_gap = 1.0 - worst;
    return rep;
}

StationaryResult stationary_distribution(const TransitionMatrix& a) {
    if (a.is_complex() || !a.row_stochastic)
        throw ValidationError("stationary_distribution requires a row-stochastic matrix");
    const int n = a.n;
    const RatMat& m = a.real();

    // strong connectivity of the positive-entry digraph
    auto reach = [&](bool transpose) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                const Rat& entry = transpose ? m(w, u) : m(u, w);
                if (entry != 0 && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };
    auto fwd = reach(false), bwd = reach(true);
    bool irreducible = true;
    for (int i = 0; i < n; ++i)
        if (!fwd[i] || !bwd[i]) irreducible = false;

    // left fixed vectors: null space of (A^T - I)
    RatMat b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = m(j, i) - (i == j ? 1 : 0);
    auto basis = null_space(std::move(b));

    StationaryResult res;
    res.fixed_space_dim = static_cast<int>(basis.size());
    if (!irreducible) return res;
    if (res.fixed_space_dim != 1)
        throw Error("irreducible chain with fixed space dimension != 1");
    Rat sum = 0;
    for (const Rat& x : basis[0]) sum += x;
    if (sum == 0) throw Error("fixed vector sums to zero");
    std::vector<Rat> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = basis[0][i] / sum;
    for (const Rat& x : pi)
        if (x < 0) throw Error("stationary vector has a negative entry");
    res.pi = std::move(pi);
    return res;
}

bool cross_check_duality(const ModulePtr& v, const DualModule& d, const Distribution& q,
                         double tol) {
    if (q.n != v->ring->n) throw DimensionMismatch("Q has wrong length for ring");
    RatMat on_v = dilation_matrix(*v, q);
    RatMat on_dual = dilation_matrix(*d.mod, q);
    auto tv = trace_powers(on_v, v->n);
    auto td = trace_powers(on_dual, v->n);
    for (int k = 0; k < v->n; ++k) {
        Rat diff = tv[k] - td[k];
        if (std::abs(to_double(diff)) > tol) return false;
    }
    return true;
}

} // namespace ringwalk
