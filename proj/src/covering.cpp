#include "dyadic/covering.hpp"

#include <algorithm>
#include <stdexcept>

#include "dyadic/errors.hpp"

namespace dyadic {

long fit_scale(const GridFamily& family, const Rational& side) {
    if (sgn(side) <= 0) throw std::invalid_argument("fit_scale: side must be positive");
    // 2^-k0 is the unique power of two in (p*side, 2p*side].
    const Rational t = side * family.p();
    const long e = floor_log2(t) + 1;
    return -e;
}

CoverResult cover_box(const GridFamily& family, const Box& b) {
    const long k0 = fit_scale(family, b.side);
    for (int m = 0; m <= family.dimension(); ++m) {
        CubeId id = family.locate(m, k0, b.lower);
        if (box_contains_box(family.cube_box(id), b)) {
            return CoverResult{std::move(id), k0, pow2(-k0) / b.side};
        }
    }
    throw invariant_error("cover_box: no filtration covers the box at the fitted scale");
}

CoverResult cover_ball(const GridFamily& family, const Ball& b) {
    return cover_box(family, circumscribed_box(b));
}

namespace {

// Largest k with 2^-k >= s (the finest generation whose cubes can contain a
// box of side s).
long finest_containing_generation(const Rational& s) {
    long k = -floor_log2(s);
    if (pow2(-k) < s) --k;
    return k;
}

}  // namespace

bool witness_certificate_holds(const GridFamily& family, const std::vector<int>& subset,
                               const Rational& max_ratio, const Ball& ball) {
    const Box rb = circumscribed_box(ball);
    const Rational upper = max_ratio * rb.side;
    for (long k = finest_containing_generation(rb.side); pow2(-k) <= upper; --k) {
        for (int m : subset) {
            CubeId id = family.locate(m, k, rb.lower);
            if (box_contains_box(family.cube_box(id), rb)) return false;
        }
    }
    return true;
}

std::optional<WitnessResult> uncovered_witness(const GridFamily& family, std::vector<int> subset,
                                               const Rational& max_ratio) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (int m : subset) {
        if (m < 0 || m > family.dimension())
            throw std::invalid_argument("uncovered_witness: filtration index out of range");
    }
    if (sgn(max_ratio) <= 0)
        throw std::invalid_argument("uncovered_witness: max_ratio must be positive");
    const int n = family.dimension();
    if (subset.size() > static_cast<std::size_t>(n)) return std::nullopt;

    // Center: one axis per chosen filtration, pinned to that filtration's
    // generation-0 boundary coordinate o(m,0) = m/p; remaining axes at 1/2.
    // Once the certificate window consists of generations k >= 1 only, every
    // filtration in the subset has a boundary hyperplane through the center
    // at every window generation, so no cube can contain a two-sided
    // neighborhood of it.
    Point q;
    q.x.assign(static_cast<std::size_t>(n), make_rational(1, 2));
    for (std::size_t i = 0; i < subset.size(); ++i)
        q.x[i] = family.offset(subset[i], 0);

    Rational radius = make_rational(1, 4);
    for (int step = 0; step < 200; ++step) {
        Ball candidate(q, radius);
        if (witness_certificate_holds(family, subset, max_ratio, candidate)) {
            const Rational side = radius * 2;
            const long k_hi = finest_containing_generation(side);
            long k_lo = k_hi;
            while (pow2(-(k_lo - 1)) <= max_ratio * side) --k_lo;
            return WitnessResult{std::move(candidate), k_lo, k_hi};
        }
        radius /= 2;
    }
    throw invariant_error("uncovered_witness: search budget exhausted for a proper subset");
}

}  // namespace dyadic
