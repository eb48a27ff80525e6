#pragma once

#include "dyadic/measure.hpp"
#include "dyadic/rng.hpp"

namespace dyadic {

// Seeded instance generators shared by the verification suite, the CLI
// experiment drivers and the tests.  Coordinates are rationals num/den with
// den = coord_den and num uniform in [-coord_range, coord_range]; masses and
// densities are positive rationals with numerator and denominator uniform in
// [1, 4096].
struct MeasureSpec {
    enum class Layout { scatter, near_line, clustered };

    int dimension = 1;
    std::size_t atom_count = 20;
    Layout layout = Layout::scatter;
    Rational growth_dim;  // <= 0 means "use the ambient dimension"
    long coord_den = 1024;
    long coord_range = 16384;
    bool allow_zero_f = true;
};

DiscreteMeasure make_measure(SplitMix64& rng, const MeasureSpec& spec);

// Atoms on a 1-Lipschitz graph over [0,1] in R^2 with mass equal to the
// local spacing (an arclength surrogate); growth dimension 1.
DiscreteMeasure make_lipschitz_graph_measure(SplitMix64& rng, std::size_t atom_count);

// Center coordinates num/den with num in [-2^30, 2^30] and den in [1, 2^12];
// radius 2^e (1 + v/2^20) with e uniform in [-40, 40] and v in [0, 2^20).
Ball random_ball(SplitMix64& rng, int dimension);

// A measure plus a box around one of its atoms, mass-engineered so that the
// first `target_index` concentric (c_star alpha)-dilates of the box are not
// (c_star alpha, beta)-doubling and the next one is.  `on_line` keeps every
// atom on an axis-parallel line through the box center (rational distances).
struct AnnuliInstance {
    DiscreteMeasure measure;
    Box base;
    long target_index;

    AnnuliInstance(DiscreteMeasure mu, Box b, long n)
        : measure(std::move(mu)), base(std::move(b)), target_index(n) {}
};
AnnuliInstance make_annuli_instance(SplitMix64& rng, int dimension, const Rational& growth_dim,
                                    bool on_line, long target_index);

// Smallest (alpha,beta)-doubling cube of the family containing q, scanning
// generations from fine to coarse and filtrations in order.
CubeId smallest_doubling_cover(const DiscreteMeasure& mu, const GridFamily& family,
                               const Box& q, const DoublingParams& p);

}  // namespace dyadic
