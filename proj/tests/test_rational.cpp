#include <doctest.h>

#include "dyadic/errors.hpp"
#include "dyadic/rational.hpp"
#include "dyadic/rng.hpp"

using namespace dyadic;

TEST_CASE("parsing and formatting") {
    CHECK(to_string(parse_rational("1/3")) == "1/3");
    CHECK(to_string(parse_rational("-7")) == "-7");
    CHECK(to_string(parse_rational("2/4")) == "1/2");
    CHECK(to_string(parse_rational(" 12.75 ")) == "51/4");
    CHECK(to_string(parse_rational("-0.125")) == "-1/8");
    CHECK(to_string(parse_rational("+3/9")) == "1/3");
    CHECK(parse_rational("0.0") == 0);

    CHECK_THROWS_AS(parse_rational(""), parse_error);
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("a/b"), parse_error);
    CHECK_THROWS_AS(parse_rational("1.2.3"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), parse_error);
}

TEST_CASE("canonical form is maintained") {
    Rational q = make_rational(-4, -6);
    CHECK(q.get_num() == 2);
    CHECK(q.get_den() == 3);
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact on random inputs") {
    SplitMix64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        const Rational a = rng.rational_in(1'000'000, 1'000'000);
        const Rational b = rng.rational_in(1'000'000, 1'000'000);
        CHECK((a + b) - b == a);
        if (sgn(b) != 0) CHECK((a / b) * b == a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("pow2 and floor_log2") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(10) == 1024);
    CHECK(pow2(-3) == make_rational(1, 8));
    CHECK(floor_log2(Rational(1)) == 0);
    CHECK(floor_log2(Rational(3)) == 1);
    CHECK(floor_log2(make_rational(3, 5)) == -1);
    CHECK(floor_log2(make_rational(1, 8)) == -3);
    CHECK(floor_log2(Rational(8)) == 3);
    CHECK_THROWS_AS(floor_log2(Rational(0)), std::domain_error);

    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Rational x = rng.positive_rational(1'000'000, 1'000'000);
        const long L = floor_log2(x);
        CHECK(pow2(L) <= x);
        CHECK(x < pow2(L + 1));
    }
}

TEST_CASE("rational_floor") {
    CHECK(rational_floor(make_rational(7, 2)) == 3);
    CHECK(rational_floor(make_rational(-7, 2)) == -4);
    CHECK(rational_floor(Rational(5)) == 5);
}

TEST_CASE("ceil_sqrt") {
    CHECK(ceil_sqrt(Integer(0)) == 0);
    CHECK(ceil_sqrt(Integer(1)) == 1);
    CHECK(ceil_sqrt(Integer(2)) == 2);
    CHECK(ceil_sqrt(Integer(4)) == 2);
    CHECK(ceil_sqrt(Integer(65536)) == 256);
    CHECK(ceil_sqrt(Integer(65537)) == 257);
}

TEST_CASE("pow_directed brackets the true value") {
    // Integer exponents are exact.
    CHECK(pow_directed(make_rational(2, 3), 2, 1, RoundDir::down) == make_rational(4, 9));
    CHECK(pow_directed(make_rational(2, 3), -1, 1, RoundDir::up) == make_rational(3, 2));
    CHECK(pow_directed(Rational(5), 0, 1, RoundDir::down) == 1);

    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Rational base = rng.positive_rational(10000, 100);
        const long num = rng.int_in(-5, 5);
        const unsigned long den = static_cast<unsigned long>(rng.int_in(1, 4));
        const Rational lo = pow_directed(base, num, den, RoundDir::down);
        const Rational hi = pow_directed(base, num, den, RoundDir::up);
        CHECK(lo <= hi);
        // lo^den <= base^num <= hi^den, all exact comparisons.
        const Rational target = pow_directed(base, num, 1, RoundDir::down);
        CHECK(pow_directed(lo, static_cast<long>(den), 1, RoundDir::down) <= target);
        CHECK(pow_directed(hi, static_cast<long>(den), 1, RoundDir::down) >= target);
        // The bracket is tight to the stated precision.
        CHECK(hi - lo <= (hi + Rational(1)) * pow2(-90));
    }
}
