#include <doctest.h>

#include <complex>
#include <set>

#include "ringwalk/characters.hpp"

using namespace ringwalk;

TEST_CASE("angles") {
    CHECK(make_angle(5, 10) == Angle{1, 2});
    CHECK(make_angle(-1, 4) == Angle{3, 4});
    CHECK(angle_add(Angle{1, 2}, Angle{1, 2}) == Angle{0, 1});
    CHECK(angle_add(Angle{1, 3}, Angle{1, 6}) == Angle{1, 2});
    CHECK(Angle{1, 2}.value() == std::complex<double>(-1.0, 0.0));
    CHECK(Angle{1, 4}.value() == std::complex<double>(0.0, 1.0));
    CHECK(std::abs(Angle{1, 3}.value() - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}

TEST_CASE("invariant factors") {
    auto z4 = build_zn(4);
    auto p4 = invariant_factors(additive_group(*build_free_module(z4, 1)));
    CHECK(p4.orders == std::vector<int>{4});

    auto z2 = build_zn(2);
    auto p22 = invariant_factors(additive_group(*build_free_module(z2, 2)));
    CHECK(p22.orders == std::vector<int>{2, 2});

    auto r24 = build_product({build_zn(2), build_zn(4)});
    auto p24 = invariant_factors(additive_group(*r24));
    CHECK(p24.orders == std::vector<int>{2, 4});

    // the coordinate map must be an isomorphism onto Z/2 x Z/4
    GroupTable g = additive_group(*r24);
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y) {
            auto cx = p24.coords_of(x), cy = p24.coords_of(y), cs = p24.coords_of(g.opv(x, y));
            for (int i = 0; i < p24.t(); ++i)
                CHECK(cs[i] == (cx[i] + cy[i]) % p24.orders[i]);
        }
}

TEST_CASE("invariant factors reject bad tables") {
    // symmetric group S3 under composition: a group but not abelian
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    GroupTable s3;
    s3.n = 6;
    s3.op.resize(36);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int i = 0; i < 3; ++i) comp[i] = perms[a][perms[b][i]];
            for (int c = 0; c < 6; ++c)
                if (comp[0] == perms[c][0] && comp[1] == perms[c][1] && comp[2] == perms[c][2])
                    s3.op[a * 6 + b] = c;
        }
    s3.id = 0;
    s3.inv.assign(6, 0);
    CHECK_THROWS_AS(invariant_factors(s3), ValidationError);

    GroupTable bad; // no inverses, not even a group
    bad.n = 2;
    bad.op = {0, 0, 0, 0};
    bad.id = 0;
    bad.inv = {0, 0};
    CHECK_THROWS_AS(invariant_factors(bad), ValidationError);
}

TEST_CASE("character groups and evaluation") {
    auto z2 = build_zn(2);
    auto d2 = dual_module(build_free_module(z2, 1));
    CHECK(d2.chars.size() == 2);
    CHECK(d2.chi_at(0, 1) == Angle{0, 1}); // trivial
    CHECK(d2.chi_at(1, 1) == Angle{1, 2}); // sign

    auto z4 = build_zn(4);
    auto d4 = dual_module(build_free_module(z4, 1));
    CHECK(d4.chars.size() == 4);
    // the exponent-(1) character is m -> i^m
    int chi = d4.chars.index_of({1});
    CHECK(d4.chi_at(chi, 1).value() == std::complex<double>(0.0, 1.0));
    CHECK(d4.chi_at(chi, 2).value() == std::complex<double>(-1.0, 0.0));
    CHECK(d4.chi_at(0, 3) == Angle{0, 1});

    auto d22 = dual_module(build_free_module(z2, 2));
    CHECK(d22.chars.size() == 4);
    for (int c = 0; c < 4; ++c)
        for (int v = 0; v < 4; ++v) {
            Angle a = d22.chi_at(c, v);
            CHECK((a == Angle{0, 1} || a == Angle{1, 2})); // +-1 sign patterns
        }

    auto z6 = build_zn(6);
    auto d6 = dual_module(build_free_module(z6, 1));
    CHECK(d6.chi_at(d6.chars.index_of({1}), 3).value() == std::complex<double>(-1.0, 0.0));
}

TEST_CASE("characters are homomorphisms and orthogonal") {
    auto r24 = build_product({build_zn(2), build_zn(4)});
    auto v = build_free_module(r24, 1);
    DualModule d = dual_module(v);
    CHECK(d.mod->n == v->n); // |V^| = |V|
    for (int c = 0; c < d.chars.size(); ++c) {
        for (int x = 0; x < v->n; ++x)
            for (int y = 0; y < v->n; ++y)
                CHECK(d.chi_at(c, v->addv(x, y)) == angle_add(d.chi_at(c, x), d.chi_at(c, y)));
        std::complex<double> sum = 0;
        for (int x = 0; x < v->n; ++x) sum += d.chi_at(c, x).value();
        if (c == 0)
            CHECK(std::abs(sum - static_cast<double>(v->n)) < 1e-9);
        else
            CHECK(std::abs(sum) < 1e-9);
    }
}

TEST_CASE("linear independence via the Gram matrix") {
    auto z6 = build_zn(6);
    auto v = build_free_module(z6, 1);
    DualModule d = dual_module(v);
    // rows are orthogonal with norm |V|, so the value matrix is invertible
    for (int c1 = 0; c1 < d.chars.size(); ++c1)
        for (int c2 = 0; c2 < d.chars.size(); ++c2) {
            std::complex<double> g = 0;
            for (int x = 0; x < v->n; ++x)
                g += d.chi_at(c1, x).value() * std::conj(d.chi_at(c2, x).value());
            CHECK(std::abs(g - (c1 == c2 ? 6.0 : 0.0)) < 1e-9);
        }
}

TEST_CASE("dual module action") {
    auto z4 = build_zn(4);
    auto v4 = build_free_module(z4, 1);
    DualModule d4 = dual_module(v4);
    CHECK(cyclic_submodules(d4.mod).size() == cyclic_submodules(v4).size());

    auto z2 = build_zn(2);
    DualModule d22 = dual_module(build_free_module(z2, 2));
    for (int c = 0; c < 4; ++c) CHECK(d22.mod->act(0, c) == 0); // 0*chi is trivial

    // Z/6 is self-dual: the exponent-1 character has injective scalar action
    auto z6 = build_zn(6);
    DualModule d6 = dual_module(build_free_module(z6, 1));
    int chi = d6.chars.index_of({1});
    std::set<int> image;
    for (int r = 0; r < 6; ++r) image.insert(d6.mod->act(r, chi));
    CHECK(image.size() == 6);

    // (r*chi)(v) = chi(r*v) across the entire table
    for (const DualModule* d : {&d4, &d22, &d6}) {
        const FiniteModule& base = *d->base;
        for (int r = 0; r < base.ring->n; ++r)
            for (int c = 0; c < d->mod->n; ++c)
                for (int x = 0; x < base.n; ++x)
                    CHECK(d->chi_at(d->mod->act(r, c), x) == d->chi_at(c, base.act(r, x)));
    }
}

TEST_CASE("double dual pairing is injective") {
    auto r62 = build_product({build_zn(6), build_zn(2)});
    auto v = build_free_module(r62, 1);
    DualModule d = dual_module(v);
    for (int x = 0; x < v->n; ++x) {
        if (x == v->zero) continue;
        bool separated = false;
        for (int c = 0; c < d.chars.size(); ++c)
            if (!d.chi_at(c, x).is_zero()) separated = true;
        CHECK(separated);
    }
}

TEST_CASE("stabilizers in unit groups") {
    auto z4 = build_zn(4);
    DualModule d4 = dual_module(build_free_module(z4, 1));
    UnitGroup u4 = units(z4);
    CHECK(stabilizer_in_units(d4, 0, u4.members) == u4.members); // trivial character
    CHECK(stabilizer_in_units(d4, d4.chars.index_of({1}), u4.members) == std::vector<int>{1});

    auto z12 = build_zn(12);
    DualModule d12 = dual_module(build_free_module(z12, 1));
    UnitGroup u12 = units(z12);
    int order2 = -1;
    for (int c = 0; c < 12; ++c)
        if (c != 0 && d12.mod->addv(c, c) == 0) order2 = c;
    REQUIRE(order2 >= 0);
    CHECK(stabilizer_in_units(d12, order2, u12.members) == u12.members);

    // St_{U(Re)}(chi) = e + ann(chi)e
    auto z6 = build_zn(6);
    auto v6 = build_free_module(z6, 1);
    DualModule d6 = dual_module(v6);
    for (int chi = 0; chi < 6; ++chi) {
        int e = minimal_fixing_idempotent(*d6.mod, chi);
        auto ue = corner_units(*z6, e);
        auto stab = stabilizer_in_units(d6, chi, ue);
        std::set<int> expect;
        for (int a : annihilator_of(*d6.mod, chi).members)
            expect.insert(z6->addv(e, z6->mulv(a, e)));
        CHECK(stab == std::vector<int>(expect.begin(), expect.end()));
    }
}
