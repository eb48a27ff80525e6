#pragma once

#include <optional>
#include <vector>

#include "dyadic/geometry.hpp"
#include "dyadic/grids.hpp"

namespace dyadic {

struct CoverResult {
    CubeId cube;
    long k0 = 0;
    Rational side_ratio;  // side(cube) / side(query box), always in (p, 2p]
};

// Unique k0 with 2^{-k0-1}/p <= side < 2^{-k0}/p.
long fit_scale(const GridFamily& family, const Rational& side);

// Finds a cube of one of the n+1 filtrations, at generation fit_scale(side),
// containing b.  Filtrations are tried in order m = 0..n and the first hit is
// returned, so the result is deterministic.  Failure would contradict the
// covering property of the family and raises invariant_error.
CoverResult cover_box(const GridFamily& family, const Box& b);

// cover_box of the circumscribed cube; side(cube) <= 2p * 2 * radius.
CoverResult cover_ball(const GridFamily& family, const Ball& b);

struct WitnessResult {
    Ball ball;
    long k_lo = 0;  // generations checked by the certificate: k_lo..k_hi
    long k_hi = 0;
};

// For a proper subset of at most n filtration indices, produces a ball that
// no cube of those filtrations contains within the side ratio max_ratio.
// Certificate: non-containment is checked exactly for every generation k with
// side(R_B) <= 2^-k <= max_ratio * side(R_B); larger cubes violate the ratio
// and smaller ones cannot contain the circumscribed box.  Returns nullopt
// when the subset already has n+1 or more filtrations (the full family covers
// everything, so no witness exists).
std::optional<WitnessResult> uncovered_witness(const GridFamily& family,
                                               std::vector<int> subset,
                                               const Rational& max_ratio);

// Exhaustive recheck of a witness certificate; used by tests and the CLI.
bool witness_certificate_holds(const GridFamily& family, const std::vector<int>& subset,
                               const Rational& max_ratio, const Ball& ball);

}  // namespace dyadic
