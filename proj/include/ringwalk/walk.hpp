#pragma once

#include <variant>

#include "ringwalk/distribution.hpp"
#include "ringwalk/matrix.hpp"

namespace ringwalk {

enum class WalkKind { CoinToss, Affine, Polynomial };

// One monomial c * x^i y^j of the walk polynomial p(x,y); x stands for the
// translation step driven by P and y for the dilation step driven by Q.
struct PolyTerm {
    int deg_p = 0;
    int deg_q = 0;
    CRat coeff;
};

struct WalkSpec {
    WalkKind kind = WalkKind::Affine;
    Rat alpha;                   // coin-toss only, in [0,1]
    std::vector<PolyTerm> poly;  // polynomial only
    Distribution p;              // on V
    Distribution q;              // on R

    void validate(const FiniteModule& v) const; // throws HypothesisError on bad P
};

/// Row-stochastic (or, for polynomial walks, possibly non-stochastic and
/// complex) transition matrix of a walk, row index = source state.
struct TransitionMatrix {
    int n = 0;
    std::variant<RatMat, CMat> entries;
    bool row_stochastic = false;
    std::vector<std::string> labels;

    bool is_complex() const { return std::holds_alternative<CMat>(entries); }
    const RatMat& real() const { return std::get<RatMat>(entries); }
    const CMat& cplx() const { return std::get<CMat>(entries); }
};

// Pure one-step matrices: x -> x+b with P(b), and x -> a*x with Q(a).
RatMat translation_matrix(const FiniteModule& v, const Distribution& p);
RatMat dilation_matrix(const FiniteModule& v, const Distribution& q);

TransitionMatrix coin_toss_matrix(const FiniteModule& v, const Distribution& p,
                                  const Distribution& q, const Rat& alpha);
TransitionMatrix affine_matrix(const FiniteModule& v, const Distribution& p,
                               const Distribution& q);
TransitionMatrix polynomial_operator_matrix(const FiniteModule& v, const Distribution& p,
                                            const Distribution& q,
                                            const std::vector<PolyTerm>& poly);
TransitionMatrix build_walk_matrix(const FiniteModule& v, const WalkSpec& spec);

struct IrreducibilityReport {
    // raw hypothesis flags of the sufficient conditions
    bool p_support_generates = false;
    bool one_in_support_q = false;
    bool zero_in_monoid_q = false;
    // the conditions themselves (already include the hypotheses they need)
    bool sufficient_irreducible = false;
    bool sufficient_aperiodic = false;
    // exact answers from the positive-entry digraph
    bool exact_irreducible = false;
    bool exact_aperiodic = false;
};

IrreducibilityReport irreducibility_report(const FiniteModule& v, const WalkSpec& spec,
                                           const TransitionMatrix& t);

} // namespace ringwalk
