#pragma once

#include <optional>

#include "ringwalk/spectrum.hpp"

namespace ringwalk {

/// Result of checking a predicted spectrum against the matrix it claims to
/// describe, without any numerical eigensolver: tr(A^k) is computed exactly
/// in rational (or complex-rational) arithmetic and compared with
/// sum_i lambda_i^k for k = 1..n. Equal power sums up to k = n certify
/// equal eigenvalue multisets.
struct VerificationReport {
    std::vector<double> power_sum_residuals; // k = 1..n
    double max_residual = 0;
    bool pass = false;
    std::optional<bool> char_poly_match;
    double spectral_gap = 0; // 1 - max{|lambda| : lambda not the designated 1-item}
};

VerificationReport verify_power_sums(const TransitionMatrix& a, const SpectrumReport& s,
                                     double tol);

struct StationaryResult {
    int fixed_space_dim = 0;
    std::optional<std::vector<Rat>> pi; // present iff the chain is irreducible
};

// Unique left fixed vector of an irreducible row-stochastic matrix, solved
// exactly over the rationals; for reducible chains only the dimension of
// the fixed-vector space is reported.
StationaryResult stationary_distribution(const TransitionMatrix& a);

// Multiplication walks driven by Q on V and on V^ have equal spectra;
// checked by comparing the exact traces of all matrix powers k = 1..n.
bool cross_check_duality(const ModulePtr& v, const DualModule& d, const Distribution& q,
                         double tol);

} // namespace ringwalk
