#include "ringwalk/matrix.hpp"

#include "ringwalk/errors.hpp"

namespace ringwalk {

RatMat identity_matrix(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat mat_mul(const RatMat& x, const RatMat& y) {
    if (x.cols != y.rows) throw DimensionMismatch("mat_mul: incompatible shapes");
    RatMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& xik = x(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                const Rat& ykj = y(k, j);
                if (ykj == 0) continue;
                r(i, j) += xik * ykj;
            }
        }
    return r;
}

CMat mat_mul(const CMat& x, const CMat& y) {
    if (x.cols != y.rows) throw DimensionMismatch("mat_mul: incompatible shapes");
    CMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const CRat& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                const CRat& ykj = y(k, j);
                if (ykj.is_zero()) continue;
                r(i, j) = r(i, j) + xik * ykj;
            }
        }
    return r;
}

RatMat mat_add_scaled(const Rat& a, const RatMat& x, const Rat& b, const RatMat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw DimensionMismatch("mat_add_scaled: incompatible shapes");
    RatMat r(x.rows, x.cols);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = a * x.a[i] + b * y.a[i];
    return r;
}

CMat to_complex_matrix(const RatMat& x) {
    CMat r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = CRat(x.a[i]);
    return r;
}

namespace {

// c += a*b without temporaries in the hot loop.
inline void addmul(Int& c, const Int& a, const Int& b) {
    mpz_addmul(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void submul(Int& c, const Int& a, const Int& b) {
    mpz_submul(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

std::vector<Int> int_mat_mul(const std::vector<Int>& x, const std::vector<Int>& y, int n) {
    std::vector<Int> r(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Int& xik = x[static_cast<size_t>(i) * n + k];
            if (xik == 0) continue;
            const Int* yk = &y[static_cast<size_t>(k) * n];
            Int* ri = &r[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) addmul(ri[j], xik, yk[j]);
        }
    return r;
}

} // namespace

std::vector<Rat> trace_powers(const RatMat& a, int kmax) {
    if (a.rows != a.cols) throw DimensionMismatch("trace_powers: matrix not square");
    const int n = a.rows;
    Int d = common_denominator(a.a);
    std::vector<Int> base(a.a.size());
    for (size_t i = 0; i < a.a.size(); ++i) {
        Rat scaled = a.a[i] * Rat(d);
        base[i] = scaled.get_num(); // denominator is 1 by construction
    }
    std::vector<Rat> traces;
    traces.reserve(kmax);
    std::vector<Int> power = base;
    Int dk = 1;
    for (int k = 1; k <= kmax; ++k) {
        dk *= d;
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += power[static_cast<size_t>(i) * n + i];
        Rat t(tr, dk);
        t.canonicalize();
        traces.push_back(t);
        if (k < kmax) power = int_mat_mul(power, base, n);
    }
    return traces;
}

std::vector<CRat> trace_powers(const CMat& a, int kmax) {
    if (a.rows != a.cols) throw DimensionMismatch("trace_powers: matrix not square");
    const int n = a.rows;
    std::vector<Rat> parts;
    parts.reserve(a.a.size() * 2);
    for (const CRat& c : a.a) {
        parts.push_back(c.re);
        parts.push_back(c.im);
    }
    Int d = common_denominator(parts);
    std::vector<Int> bre(a.a.size()), bim(a.a.size());
    for (size_t i = 0; i < a.a.size(); ++i) {
        bre[i] = Rat(a.a[i].re * Rat(d)).get_num();
        bim[i] = Rat(a.a[i].im * Rat(d)).get_num();
    }
    std::vector<CRat> traces;
    traces.reserve(kmax);
    std::vector<Int> pre = bre, pim = bim;
    Int dk = 1;
    for (int k = 1; k <= kmax; ++k) {
        dk *= d;
        Int tre = 0, tim = 0;
        for (int i = 0; i < n; ++i) {
            tre += pre[static_cast<size_t>(i) * n + i];
            tim += pim[static_cast<size_t>(i) * n + i];
        }
        Rat re(tre, dk), im(tim, dk);
        re.canonicalize();
        im.canonicalize();
        traces.emplace_back(re, im);
        if (k < kmax) {
            std::vector<Int> nre(pre.size()), nim(pim.size());
            for (int i = 0; i < n; ++i)
                for (int kk = 0; kk < n; ++kk) {
                    const Int& xre = pre[static_cast<size_t>(i) * n + kk];
                    const Int& xim = pim[static_cast<size_t>(i) * n + kk];
                    if (xre == 0 && xim == 0) continue;
                    const Int* yre = &bre[static_cast<size_t>(kk) * n];
                    const Int* yim = &bim[static_cast<size_t>(kk) * n];
                    Int* rre = &nre[static_cast<size_t>(i) * n];
                    Int* rim = &nim[static_cast<size_t>(i) * n];
                    for (int j = 0; j < n; ++j) {
                        addmul(rre[j], xre, yre[j]);
                        submul(rre[j], xim, yim[j]);
                        addmul(rim[j], xre, yim[j]);
                        addmul(rim[j], xim, yre[j]);
                    }
                }
            pre = std::move(nre);
            pim = std::move(nim);
        }
    }
    return traces;
}

int rref(RatMat& m, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m(pivot, j), m(rank, j));
        Rat inv = m(rank, col);
        for (int j = 0; j < m.cols; ++j) m(rank, j) /= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(rank, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rat>> null_space(RatMat m) {
    const int n = m.cols;
    std::vector<int> pivot_cols;
    int rank = rref(m, &pivot_cols);
    std::vector<bool> is_pivot(n, false);
    for (int pc : pivot_cols) is_pivot[pc] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(n);
        v[free] = 1;
        for (int row = 0; row < rank; ++row) v[pivot_cols[row]] = -m(row, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace ringwalk
