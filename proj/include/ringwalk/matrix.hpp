#pragma once

#include <vector>

#include "ringwalk/rational.hpp"

namespace ringwalk {

// Dense row-major square-or-rectangular matrix over exact scalars.
template <typename T>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const = default;
};

using RatMat = Mat<Rat>;
using CMat = Mat<CRat>;

RatMat identity_matrix(int n);
RatMat mat_mul(const RatMat& x, const RatMat& y);
CMat mat_mul(const CMat& x, const CMat& y);
RatMat mat_add_scaled(const Rat& a, const RatMat& x, const Rat& b, const RatMat& y);

CMat to_complex_matrix(const RatMat& x);

// Exact traces of A^k for k = 1..kmax. The matrix is scaled to an integer
// matrix N = D*A (D the lcm of all entry denominators) and powered with
// GMP integers; tr(A^k) = tr(N^k)/D^k.
std::vector<Rat> trace_powers(const RatMat& a, int kmax);
std::vector<CRat> trace_powers(const CMat& a, int kmax);

// Reduced row echelon form in place over Q; returns the rank and,
// when requested, the pivot columns.
int rref(RatMat& m, std::vector<int>* pivot_cols = nullptr);

// Basis of the right null space {x : m x = 0}, each column vector
// returned as a length-cols vector.
std::vector<std::vector<Rat>> null_space(RatMat m);

} // namespace ringwalk
