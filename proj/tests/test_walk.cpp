#include <doctest.h>

#include "ringwalk/walk.hpp"

using namespace ringwalk;

namespace {

Distribution dist(std::vector<std::string> w) { return distribution_from_strings(w); }

WalkSpec coin(Distribution p, Distribution q, Rat alpha) {
    WalkSpec s;
    s.kind = WalkKind::CoinToss;
    s.alpha = std::move(alpha);
    s.p = std::move(p);
    s.q = std::move(q);
    return s;
}

WalkSpec affine(Distribution p, Distribution q) {
    WalkSpec s;
    s.kind = WalkKind::Affine;
    s.p = std::move(p);
    s.q = std::move(q);
    return s;
}

} // namespace

TEST_CASE("constant on associates") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    CHECK_FALSE(validate_constant_on_associates(*v, uniform_distribution(4)).has_value());
    CHECK_FALSE(
        validate_constant_on_associates(*v, dist({"2/5", "1/5", "1/5", "1/5"})).has_value());

    auto bad = validate_constant_on_associates(*v, dist({"2/5", "3/10", "1/5", "1/10"}));
    REQUIRE(bad.has_value());
    // 1 and 3 are associates with unequal weights
    CHECK(((bad->first == 1 && bad->second == 3) || (bad->first == 3 && bad->second == 1)));

    Distribution sym = symmetrize_over_associates(*v, dist({"2/5", "3/10", "1/5", "1/10"}));
    sym.validate();
    CHECK_FALSE(validate_constant_on_associates(*v, sym).has_value());
    CHECK(sym.weights[1] == Rat(1, 5));
    CHECK(sym.weights[3] == Rat(1, 5));
    CHECK(sym.weights[0] == Rat(2, 5));
}

TEST_CASE("(Z/2)^2 affine and coin-toss matrices entry by entry") {
    auto z2 = build_zn(2);
    auto v = build_free_module(z2, 2);
    // P indexed by (0,0),(0,1),(1,0),(1,1); any P works over Z/2
    Rat p00(2, 5), p01(1, 5), p10(1, 10), p11(3, 10);
    Rat q0(3, 10), q1(7, 10);
    Distribution p = dist({"2/5", "1/5", "1/10", "3/10"});
    Distribution q = dist({"3/10", "7/10"});

    TransitionMatrix aff = affine_matrix(*v, p, q);
    REQUIRE_FALSE(aff.is_complex());
    CHECK(aff.row_stochastic);
    const RatMat& a = aff.real();
    Rat expect_a[4][4] = {
        {p00, p01, p10, p11},
        {q0 * p00 + q1 * p01, q1 * p00 + q0 * p01, q0 * p10 + q1 * p11, q1 * p10 + q0 * p11},
        {q0 * p00 + q1 * p10, q0 * p01 + q1 * p11, q1 * p00 + q0 * p10, q1 * p01 + q0 * p11},
        {q0 * p00 + q1 * p11, q0 * p01 + q1 * p10, q1 * p01 + q0 * p10, q1 * p00 + q0 * p11}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(a(i, j) == expect_a[i][j]);

    Rat al(1, 3);
    TransitionMatrix ct = coin_toss_matrix(*v, p, q, al);
    const RatMat& c = ct.real();
    Rat be = 1 - al;
    Rat expect_c[4][4] = {
        {be + al * p00, al * p01, al * p10, al * p11},
        {be * q0 + al * p01, be * q1 + al * p00, al * p11, al * p10},
        {be * q0 + al * p10, al * p11, be * q1 + al * p00, al * p01},
        {be * q0 + al * p11, al * p10, al * p01, be * q1 + al * p00}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(c(i, j) == expect_c[i][j]);
}

TEST_CASE("coin toss entries on Z/4") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    Distribution p = dist({"2/5", "1/5", "1/5", "1/5"});
    Distribution q = dist({"1/10", "3/10", "1/5", "2/5"});
    Rat al(1, 2);
    TransitionMatrix t = coin_toss_matrix(*v, p, q, al);
    // entry (0,0) = alpha*p0 + (1-alpha): every dilation fixes 0
    CHECK(t.real()(0, 0) == al * Rat(2, 5) + (1 - al));
    CHECK(t.row_stochastic);

    // alpha = 1 reduces to the translation walk
    TransitionMatrix pure = coin_toss_matrix(*v, p, q, Rat(1));
    CHECK(pure.real() == translation_matrix(*v, p));
    for (int x = 0; x < 4; ++x)
        for (int b = 0; b < 4; ++b) CHECK(pure.real()(x, v->addv(x, b)) == p.weights[b]);
}

TEST_CASE("affine special cases") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    Distribution p = dist({"2/5", "1/5", "1/5", "1/5"});

    TransitionMatrix tr = affine_matrix(*v, p, point_mass(4, 1));
    CHECK(tr.real() == translation_matrix(*v, p));

    TransitionMatrix rows_p = affine_matrix(*v, p, point_mass(4, 0));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(rows_p.real()(x, y) == p.weights[y]);

    // factorization: affine = (dilation step) * (translation step)
    Distribution q = dist({"1/10", "3/10", "1/5", "2/5"});
    TransitionMatrix aff = affine_matrix(*v, p, q);
    CHECK(aff.real() == mat_mul(dilation_matrix(*v, q), translation_matrix(*v, p)));
}

TEST_CASE("polynomial walks reproduce the dedicated builders") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    Distribution p = dist({"2/5", "1/5", "1/5", "1/5"});
    Distribution q = dist({"1/10", "3/10", "1/5", "2/5"});

    TransitionMatrix via_poly =
        polynomial_operator_matrix(*v, p, q, {{1, 1, CRat(Rat(1))}});
    CHECK(via_poly.real() == affine_matrix(*v, p, q).real());

    Rat al(1, 3);
    TransitionMatrix ct_poly = polynomial_operator_matrix(
        *v, p, q, {{1, 0, CRat(al)}, {0, 1, CRat(1 - al)}});
    CHECK(ct_poly.real() == coin_toss_matrix(*v, p, q, al).real());
    CHECK(ct_poly.row_stochastic);

    // x^2 is the two-step translation walk
    TransitionMatrix sq = polynomial_operator_matrix(*v, p, q, {{2, 0, CRat(Rat(1))}});
    RatMat tp = translation_matrix(*v, p);
    CHECK(sq.real() == mat_mul(tp, tp));

    // complex coefficients flip the representation and the stochastic flag
    TransitionMatrix cx =
        polynomial_operator_matrix(*v, p, q, {{1, 1, CRat(Rat(0), Rat(1))}});
    CHECK(cx.is_complex());
    CHECK_FALSE(cx.row_stochastic);
}

TEST_CASE("walk spec validation") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    WalkSpec bad = coin(dist({"2/5", "3/10", "1/5", "1/10"}), uniform_distribution(4), Rat(1, 2));
    CHECK_THROWS_AS(bad.validate(*v), HypothesisError);
    CHECK_THROWS_AS(build_walk_matrix(*v, bad), HypothesisError);

    WalkSpec bad_alpha = coin(uniform_distribution(4), uniform_distribution(4), Rat(3, 2));
    CHECK_THROWS_AS(bad_alpha.validate(*v), ValidationError);

    WalkSpec ok = affine(uniform_distribution(4), uniform_distribution(4));
    ok.validate(*v);
    CHECK(build_walk_matrix(*v, ok).row_stochastic);
}

TEST_CASE("irreducibility report") {
    auto z4 = build_zn(4);
    auto v = build_free_module(z4, 1);
    Distribution uni = uniform_distribution(4);
    Distribution q = dist({"1/10", "3/10", "1/5", "2/5"}); // 0 and 1 in support

    WalkSpec aff = affine(uni, q);
    TransitionMatrix t = build_walk_matrix(*v, aff);
    IrreducibilityReport rep = irreducibility_report(*v, aff, t);
    CHECK(rep.p_support_generates);
    CHECK(rep.one_in_support_q);
    CHECK(rep.zero_in_monoid_q);
    CHECK(rep.sufficient_irreducible);
    CHECK(rep.sufficient_aperiodic);
    CHECK(rep.exact_irreducible);
    CHECK(rep.exact_aperiodic);

    // support {0} only: the walk can only dilate, never leaves 0 once there
    WalkSpec stuck = coin(point_mass(4, 0), q, Rat(1, 2));
    TransitionMatrix ts = build_walk_matrix(*v, stuck);
    IrreducibilityReport rs = irreducibility_report(*v, stuck, ts);
    CHECK_FALSE(rs.p_support_generates);
    CHECK_FALSE(rs.sufficient_irreducible);
    CHECK_FALSE(rs.exact_irreducible);

    // Q concentrated on 1 still gives an irreducible affine walk
    WalkSpec pure = affine(uni, point_mass(4, 1));
    TransitionMatrix tp = build_walk_matrix(*v, pure);
    IrreducibilityReport rp = irreducibility_report(*v, pure, tp);
    CHECK(rp.sufficient_irreducible);
    CHECK_FALSE(rp.sufficient_aperiodic); // monoid{1} misses 0
    CHECK(rp.exact_irreducible);

    // extreme alphas void the coin-toss hypothesis 0 < alpha < 1
    WalkSpec a1 = coin(dist({"0", "1/2", "0", "1/2"}), point_mass(4, 0), Rat(1));
    TransitionMatrix t1 = build_walk_matrix(*v, a1);
    IrreducibilityReport r1 = irreducibility_report(*v, a1, t1);
    CHECK(r1.p_support_generates);
    CHECK_FALSE(r1.sufficient_irreducible);
    CHECK(r1.exact_irreducible);
    CHECK_FALSE(r1.exact_aperiodic); // parity alternates: period 2

    // sufficiency never contradicts the exact digraph answer
    auto z6 = build_zn(6);
    auto v6 = build_free_module(z6, 1);
    for (int sp = 1; sp < 64; ++sp) {
        Distribution p6;
        p6.n = 6;
        p6.weights.assign(6, Rat(0));
        int bits = 0;
        for (int i = 0; i < 6; ++i)
            if (sp & (1 << i)) ++bits;
        for (int i = 0; i < 6; ++i)
            if (sp & (1 << i)) p6.weights[i] = Rat(1, bits);
        Distribution p6s = symmetrize_over_associates(*v6, p6);
        for (WalkSpec s : {affine(p6s, q.n == 6 ? q : uniform_distribution(6)),
                           coin(p6s, uniform_distribution(6), Rat(1, 3))}) {
            TransitionMatrix tm = build_walk_matrix(*v6, s);
            IrreducibilityReport rr = irreducibility_report(*v6, s, tm);
            if (rr.sufficient_irreducible) CHECK(rr.exact_irreducible);
            if (rr.sufficient_aperiodic) CHECK(rr.exact_aperiodic);
        }
    }
}
