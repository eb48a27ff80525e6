#include <doctest.h>

#include <thread>

#include "dyadic/grids.hpp"
#include "dyadic/rng.hpp"

using namespace dyadic;

namespace {

CubeId make_id(int m, long k, std::vector<long> j) {
    CubeId id;
    id.m = m;
    id.k = k;
    for (long v : j) id.j.push_back(Integer(v));
    return id;
}

}  // namespace

TEST_CASE("shift denominator p") {
    CHECK(GridFamily(1).p() == 3);
    CHECK(GridFamily(2).p() == 3);
    CHECK(GridFamily(3).p() == 5);
    CHECK(GridFamily(4).p() == 5);
    CHECK(GridFamily(5).p() == 7);
    CHECK(GridFamily(2).filtration_count() == 3);
    for (int n = 1; n <= 8; ++n) {
        const GridFamily f(n);
        CHECK(f.p() % 2 == 1);
        CHECK(f.p() > n);
        CHECK(f.p() - 2 <= n);
    }
}

TEST_CASE("offsets: unshifted grid and the diagonal recursion") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(GridFamily(n).offset(0, -7) == 0);
        CHECK(GridFamily(n).offset(0, 13) == 0);
    }
    const GridFamily f2(2);
    CHECK(f2.offset(1, -1) == parse_rational("-2/3"));
    CHECK(f2.offset(1, -2) == parse_rational("-8/3"));
    CHECK(f2.offset(2, 0) == parse_rational("2/3"));
    CHECK(f2.offset(2, 5) == parse_rational("2/3"));
    CHECK(f2.offset(1, 0) == parse_rational("1/3"));
    CHECK_THROWS_AS(f2.offset(3, 0), std::invalid_argument);

    // o(1,-1) really is the diagonal parent shift: [-2/3,4/3)^2 contains the
    // initial cube [1/3,4/3)^2 and -2/3 is an integer multiple of 2/3.
    CHECK(box_contains_box(f2.cube_box(make_id(1, -1, {0, 0})),
                           f2.cube_box(make_id(1, 0, {0, 0}))));
    CHECK(is_integer(f2.offset(1, -1) / parse_rational("2/3")));
}

TEST_CASE("cube_box") {
    const GridFamily f2(2);
    CHECK(f2.cube_box(make_id(0, 0, {0, 0})) == Box(Point({Rational(0), Rational(0)}), Rational(1)));
    CHECK(f2.cube_box(make_id(1, 0, {0, 0})) ==
          Box(Point({parse_rational("1/3"), parse_rational("1/3")}), Rational(1)));
    CHECK(f2.cube_box(make_id(1, -1, {0, 0})) ==
          Box(Point({parse_rational("-2/3"), parse_rational("-2/3")}), Rational(2)));
}

TEST_CASE("locate") {
    const GridFamily f2(2);
    CHECK(f2.locate(0, 0, Point({parse_rational("1/2"), parse_rational("1/2")})) ==
          make_id(0, 0, {0, 0}));
    CHECK(f2.locate(1, 0, Point({Rational(0), Rational(0)})) == make_id(1, 0, {-1, -1}));
    CHECK(f2.cube_box(make_id(1, 0, {-1, -1})).lower ==
          Point({parse_rational("-2/3"), parse_rational("-2/3")}));
    CHECK(f2.locate(1, 4, Point({parse_rational("49/100"), parse_rational("49/100")})) ==
          make_id(1, 4, {2, 2}));
}

TEST_CASE("parent") {
    const GridFamily f1(1);
    CHECK(f1.parent(make_id(0, 1, {1})) == make_id(0, 0, {0}));
    const GridFamily f2(2);
    const CubeId par = f2.parent(make_id(1, 0, {0, 0}));
    CHECK(par == make_id(1, -1, {0, 0}));
    const CubeId grand = f2.parent(par);
    CHECK(f2.cube_box(grand) ==
          Box(Point({parse_rational("-8/3"), parse_rational("-8/3")}), Rational(4)));
}

TEST_CASE("children") {
    const GridFamily f1(1);
    const auto kids1 = f1.children(make_id(0, 0, {0}));
    REQUIRE(kids1.size() == 2);
    CHECK(f1.cube_box(kids1[0]) == Box(Point({Rational(0)}), parse_rational("1/2")));
    CHECK(f1.cube_box(kids1[1]) == Box(Point({parse_rational("1/2")}), parse_rational("1/2")));

    const GridFamily f2(2);
    const auto kids2 = f2.children(make_id(1, -1, {0, 0}));
    REQUIRE(kids2.size() == 4);
    bool found_initial = false;
    for (const auto& kid : kids2) {
        CHECK(kid.k == 0);
        CHECK(f2.cube_box(kid).side == 1);
        CHECK(f2.parent(kid) == make_id(1, -1, {0, 0}));
        if (f2.cube_box(kid) ==
            Box(Point({parse_rational("1/3"), parse_rational("1/3")}), Rational(1)))
            found_initial = true;
    }
    CHECK(found_initial);
}

TEST_CASE("in_lattice") {
    const GridFamily f2(2);
    CHECK(f2.in_lattice(Point({Rational(0), Rational(0)}), 5));
    CHECK(f2.in_lattice(Point({parse_rational("1/3"), parse_rational("4/3")}), 0));
    CHECK_FALSE(f2.in_lattice(Point({parse_rational("1/2"), Rational(0)}), 0));
}

TEST_CASE("partition, nesting and lattice over sampled cubes") {
    SplitMix64 rng(1234);
    for (int n = 1; n <= 5; ++n) {
        const GridFamily family(n);
        for (long k = -20; k <= 20; k += 4) {
            for (int m = 0; m <= n; ++m) {
                CubeId id;
                id.m = m;
                id.k = k;
                for (int i = 0; i < n; ++i) id.j.push_back(Integer(rng.int_in(-4096, 4096)));
                const Box box = family.cube_box(id);

                CHECK(box_contains_box(family.cube_box(family.parent(id)), box));

                Point x = box.lower;
                for (auto& c : x.x) c += box.side * rng.unit_fraction(32);
                CHECK(family.locate(m, k, x) == id);

                for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
                    Point corner = box.lower;
                    for (int i = 0; i < n; ++i)
                        if (mask & (1ul << i)) corner.x[static_cast<std::size_t>(i)] += box.side;
                    CHECK(family.in_lattice(corner, k));
                }
            }
        }
    }
}

TEST_CASE("distinct filtrations never share boundary hyperplanes") {
    for (int n = 1; n <= 5; ++n) {
        const GridFamily family(n);
        for (long k = -30; k <= 30; ++k) {
            for (int m = 0; m <= n; ++m) {
                for (int m2 = 0; m2 < m; ++m2) {
                    const Rational diff = family.offset(m, k) - family.offset(m2, k);
                    CHECK_FALSE(is_integer(diff * pow2(k)));
                }
            }
        }
    }
}

TEST_CASE("any two points eventually share a cube in a shifted filtration") {
    SplitMix64 rng(99);
    const GridFamily family(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Point a({rng.rational_in(4096, 64), rng.rational_in(4096, 64)});
        const Point b({rng.rational_in(4096, 64), rng.rational_in(4096, 64)});
        for (int m = 1; m <= 2; ++m) {
            bool shared = false;
            for (long k = 0; k >= -120 && !shared; --k)
                shared = family.locate(m, k, a) == family.locate(m, k, b);
            CHECK(shared);
        }
    }
    // Filtration 0 keeps the hyperplane through 0 forever: points on opposite
    // sides of it never share a cube.
    const Point neg({parse_rational("-1/2"), parse_rational("1/2")});
    const Point pos({parse_rational("1/2"), parse_rational("1/2")});
    for (long k = 0; k >= -120; --k)
        CHECK_FALSE(family.locate(0, k, neg) == family.locate(0, k, pos));
}

TEST_CASE("offset memo is usable concurrently") {
    const GridFamily family(3);
    std::vector<std::thread> threads;
    std::vector<Rational> results(8);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&family, &results, t] {
            Rational acc(0);
            for (long k = 0; k >= -200; --k)
                for (int m = 0; m <= 3; ++m) acc += family.offset(m, k) * pow2(k);
            results[static_cast<std::size_t>(t)] = acc;
        });
    }
    for (auto& th : threads) th.join();
    for (int t = 1; t < 8; ++t) CHECK(results[static_cast<std::size_t>(t)] == results[0]);
}
