#include <doctest.h>

#include "dyadic/covering.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/rng.hpp"

using namespace dyadic;

TEST_CASE("fit_scale") {
    CHECK(fit_scale(GridFamily(2), parse_rational("1/5")) == 0);
    CHECK(fit_scale(GridFamily(1), Rational(1)) == -2);
    CHECK(fit_scale(GridFamily(2), parse_rational("1/50")) == 4);
    CHECK_THROWS_AS(fit_scale(GridFamily(1), Rational(0)), std::invalid_argument);

    // Defining double inequality 2^{-k0-1}/p <= side < 2^{-k0}/p.
    SplitMix64 rng(3);
    for (int n = 1; n <= 5; ++n) {
        const GridFamily family(n);
        for (int i = 0; i < 300; ++i) {
            const Rational side = rng.positive_rational(1 << 20, 1 << 20) * pow2(rng.int_in(-30, 30));
            const long k0 = fit_scale(family, side);
            CHECK(pow2(-k0 - 1) <= side * family.p());
            CHECK(side * family.p() < pow2(-k0));
        }
    }
}

TEST_CASE("cover_box worked examples") {
    const GridFamily f1(1);
    const CoverResult a = cover_box(f1, Box(Point({parse_rational("9/10")}), parse_rational("1/5")));
    CHECK(a.cube.m == 1);
    CHECK(a.k0 == 0);
    CHECK(f1.cube_box(a.cube) == Box(Point({parse_rational("1/3")}), Rational(1)));

    const GridFamily f2(2);
    const CoverResult b = cover_box(
        f2, Box(Point({parse_rational("49/100"), parse_rational("49/100")}), parse_rational("1/50")));
    CHECK(b.cube.m == 1);
    CHECK(b.k0 == 4);
    CHECK(b.cube.j[0] == 2);
    CHECK(b.cube.j[1] == 2);

    const CoverResult c = cover_box(f1, Box(Point({Rational(0)}), Rational(1)));
    CHECK(c.cube.m == 0);
    CHECK(c.k0 == -2);
    CHECK(f1.cube_box(c.cube) == Box(Point({Rational(0)}), Rational(4)));
}

TEST_CASE("cover_ball worked examples") {
    const GridFamily f2(2);
    const CoverResult a =
        cover_ball(f2, Ball(Point({parse_rational("1/2"), parse_rational("1/2")}),
                            parse_rational("1/100")));
    CHECK(a.cube.m == 1);
    CHECK(a.k0 == 4);

    const GridFamily f1(1);
    const CoverResult b = cover_ball(f1, Ball(Point({Rational(0)}), Rational(1)));
    CHECK(b.k0 == -3);
    CHECK(f1.cube_box(b.cube).side == 8);
    CHECK(box_contains_box(f1.cube_box(b.cube), Box(Point({Rational(-1)}), Rational(2))));

    // A ball well inside a grid cube is covered with ratio at most 2p.
    const Box cube = f2.cube_box(f2.locate(2, 3, Point({Rational(1), Rational(2)})));
    const Ball inner(cube.center(), cube.side / 4);
    const CoverResult c = cover_ball(f2, inner);
    CHECK(box_contains_box(f2.cube_box(c.cube), circumscribed_box(inner)));
    CHECK(c.side_ratio <= 2 * f2.p());
}

TEST_CASE("coverage property with ratio in (p, 2p]") {
    for (int n = 1; n <= 5; ++n) {
        const GridFamily family(n);
        SplitMix64 rng(2024 + static_cast<std::uint64_t>(n));
        Rational lo(2 * family.p()), hi(0);
        for (int i = 0; i < 2000; ++i) {
            const Ball ball = random_ball(rng, n);
            const CoverResult cover = cover_ball(family, ball);
            CHECK(box_contains_box(family.cube_box(cover.cube), circumscribed_box(ball)));
            CHECK(cover.side_ratio > family.p());
            CHECK(cover.side_ratio <= 2 * family.p());
            if (cover.side_ratio < lo) lo = cover.side_ratio;
            if (cover.side_ratio > hi) hi = cover.side_ratio;
        }
        // Distribution sanity: the realized ratios approach both ends.
        CHECK(lo < make_rational(5 * family.p(), 4));
        CHECK(hi > make_rational(7 * family.p(), 4));
    }
}

TEST_CASE("lattice separation at the fitted scale") {
    SplitMix64 rng(77);
    for (int n = 1; n <= 3; ++n) {
        const GridFamily family(n);
        for (int i = 0; i < 200; ++i) {
            const Rational side = rng.positive_rational(4096, 4096);
            const long k0 = fit_scale(family, side);
            const Rational spacing = pow2(-k0) / family.p();
            CHECK(spacing > side);
            // Sampled distinct points of J_k0 = (2^-k0/p) Z^n stay at sup
            // distance >= spacing, hence further apart than the query side.
            Point a, b;
            bool distinct = false;
            for (int c = 0; c < n; ++c) {
                const long va = rng.int_in(-1000, 1000);
                const long vb = rng.int_in(-1000, 1000);
                if (va != vb) distinct = true;
                a.x.push_back(spacing * va);
                b.x.push_back(spacing * vb);
            }
            if (!distinct) b.x[0] += spacing;
            CHECK(sup_distance(a, b) >= spacing);
        }
    }
}

TEST_CASE("uncovered witness for proper subfamilies") {
    const GridFamily f1(1);
    const auto w0 = uncovered_witness(f1, {0}, Rational(6));
    REQUIRE(w0.has_value());
    CHECK(w0->ball.center == Point({Rational(0)}));
    CHECK(witness_certificate_holds(f1, {0}, Rational(6), w0->ball));

    const GridFamily f2(2);
    const auto w01 = uncovered_witness(f2, {0, 1}, Rational(6));
    REQUIRE(w01.has_value());
    CHECK(w01->ball.center == Point({Rational(0), parse_rational("1/3")}));
    CHECK(witness_certificate_holds(f2, {0, 1}, Rational(6), w01->ball));

    // The full family covers everything.
    CHECK_FALSE(uncovered_witness(f1, {0, 1}, Rational(6)).has_value());
}

TEST_CASE("optimality: every n-subset admits a witness at ratio 2p") {
    for (int n = 1; n <= 4; ++n) {
        const GridFamily family(n);
        const Rational ratio(2 * family.p());
        for (int leave_out = 0; leave_out <= n; ++leave_out) {
            std::vector<int> subset;
            for (int m = 0; m <= n; ++m)
                if (m != leave_out) subset.push_back(m);
            const auto w = uncovered_witness(family, subset, ratio);
            REQUIRE(w.has_value());
            CHECK(witness_certificate_holds(family, subset, ratio, w->ball));
        }
    }
}
