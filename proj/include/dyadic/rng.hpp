#pragma once

#include <cstdint>

#include "dyadic/rational.hpp"

namespace dyadic {

// SplitMix64 (Steele/Lea/Flood): tiny, deterministic across platforms, good
// enough for test-instance generation.  All randomized drivers in the
// project take explicit seeds and draw through this generator only, so runs
// are reproducible bit for bit.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    long int_in(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    // Uniform numerator in [-num_range, num_range], denominator in
    // [1, den_range]; canonicalized.
    Rational rational_in(long num_range, long den_range) {
        return make_rational(int_in(-num_range, num_range), int_in(1, den_range));
    }

    // Uniform numerator in [1, num_range], denominator in [1, den_range].
    Rational positive_rational(long num_range, long den_range) {
        return make_rational(int_in(1, num_range), int_in(1, den_range));
    }

    // u/den with u uniform in [0, den).
    Rational unit_fraction(long den) { return make_rational(int_in(0, den - 1), den); }
};

}  // namespace dyadic
