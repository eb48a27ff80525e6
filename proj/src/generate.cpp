#include "dyadic/generate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

Point random_point(SplitMix64& rng, const MeasureSpec& spec) {
    Point p;
    p.x.reserve(static_cast<std::size_t>(spec.dimension));
    switch (spec.layout) {
        case MeasureSpec::Layout::scatter:
            for (int i = 0; i < spec.dimension; ++i)
                p.x.push_back(make_rational(rng.int_in(-spec.coord_range, spec.coord_range),
                                            spec.coord_den));
            break;
        case MeasureSpec::Layout::near_line: {
            const Rational t = make_rational(rng.int_in(-spec.coord_range, spec.coord_range),
                                             spec.coord_den);
            p.x.push_back(t);
            for (int i = 1; i < spec.dimension; ++i) {
                const Rational a = make_rational(rng.int_in(-spec.coord_range, spec.coord_range),
                                                 spec.coord_den);
                const Rational s = make_rational(rng.int_in(-256, 256), 256);
                const Rational jitter =
                    make_rational(rng.int_in(-16, 16), spec.coord_den * 64);
                p.x.push_back(a + s * t + jitter);
            }
            break;
        }
        case MeasureSpec::Layout::clustered:
            break;  // handled by the caller (needs shared cluster centers)
    }
    return p;
}

}  // namespace

DiscreteMeasure make_measure(SplitMix64& rng, const MeasureSpec& spec) {
    std::vector<Point> centers;
    if (spec.layout == MeasureSpec::Layout::clustered) {
        const std::size_t clusters = std::max<std::size_t>(2, spec.atom_count / 10);
        MeasureSpec scatter_spec = spec;
        scatter_spec.layout = MeasureSpec::Layout::scatter;
        for (std::size_t c = 0; c < clusters; ++c)
            centers.push_back(random_point(rng, scatter_spec));
    }

    std::set<std::vector<Rational>> seen;
    std::vector<Atom> atoms;
    int attempts = 0;
    while (atoms.size() < spec.atom_count) {
        if (++attempts > 1000 * static_cast<int>(spec.atom_count) + 1000)
            throw invariant_error("make_measure: cannot place distinct atoms");
        Point p;
        if (spec.layout == MeasureSpec::Layout::clustered) {
            p = centers[rng.below(centers.size())];
            for (auto& c : p.x) c += make_rational(rng.int_in(-64, 64), spec.coord_den * 64);
        } else {
            p = random_point(rng, spec);
        }
        if (!seen.insert(p.x).second) continue;
        Atom a{std::move(p), rng.positive_rational(4096, 4096), Rational(0)};
        if (!(spec.allow_zero_f && rng.chance(1, 5)))
            a.f = rng.positive_rational(4096, 4096);
        atoms.push_back(std::move(a));
    }
    const Rational growth = sgn(spec.growth_dim) > 0 ? spec.growth_dim
                                                     : Rational(spec.dimension);
    return DiscreteMeasure(spec.dimension, growth, std::move(atoms));
}

DiscreteMeasure make_lipschitz_graph_measure(SplitMix64& rng, std::size_t atom_count) {
    if (atom_count < 2)
        throw std::invalid_argument("make_lipschitz_graph_measure: need at least 2 atoms");
    // One abscissa per stratum of [0,1], jittered inside its middle three
    // quarters, so consecutive spacings stay within a fixed factor of 1/N.
    std::vector<Rational> x;
    x.reserve(atom_count);
    const long n = static_cast<long>(atom_count);
    for (long i = 0; i < n; ++i)
        x.push_back((Rational(i) + make_rational(rng.int_in(8, 56), 64)) / n);

    std::vector<Rational> y(atom_count);
    y[0] = make_rational(rng.int_in(-256, 256), 256);
    for (std::size_t i = 1; i < atom_count; ++i) {
        const Rational slope = make_rational(rng.int_in(-256, 256), 256);
        y[i] = y[i - 1] + slope * (x[i] - x[i - 1]);
    }

    std::vector<Atom> atoms;
    atoms.reserve(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) {
        const Rational lo = i == 0 ? x[0] : x[i - 1];
        const Rational hi = i + 1 == atom_count ? x[i] : x[i + 1];
        Atom a{Point({x[i], y[i]}), (hi - lo) / 2, rng.positive_rational(1024, 256)};
        atoms.push_back(std::move(a));
    }
    return DiscreteMeasure(2, Rational(1), std::move(atoms));
}

Ball random_ball(SplitMix64& rng, int dimension) {
    Point center;
    center.x.reserve(static_cast<std::size_t>(dimension));
    for (int i = 0; i < dimension; ++i)
        center.x.push_back(make_rational(rng.int_in(-(1L << 30), 1L << 30),
                                         rng.int_in(1, 4096)));
    const long e = rng.int_in(-40, 40);
    const Rational mantissa = Rational(1) + make_rational(
        static_cast<long>(rng.below(1ul << 20)), 1L << 20);
    return Ball(std::move(center), pow2(e) * mantissa);
}

AnnuliInstance make_annuli_instance(SplitMix64& rng, int dimension, const Rational& growth_dim,
                                    bool on_line, long target_index) {
    if (target_index < 1)
        throw std::invalid_argument("make_annuli_instance: target index must be >= 1");
    const Rational step = covering_constant(dimension) * default_alpha(dimension);
    const Rational beta = default_beta(dimension, growth_dim);

    Point x0;
    for (int i = 0; i < dimension; ++i)
        x0.x.push_back(make_rational(rng.int_in(-1024, 1024), 16));
    const Rational side0 = pow2(-rng.int_in(2, 8));

    std::vector<Atom> atoms;
    atoms.push_back(Atom{x0, Rational(1), rng.positive_rational(64, 64)});

    // Shell j sits in the j-th dilate annulus with mass beta * mu(previous),
    // which keeps every dilate below the target index strictly non-doubling.
    Rational running_mass(1);
    Rational half_side = side0 / 2;
    for (long j = 1; j <= target_index; ++j) {
        const Rational prev_half = half_side;
        half_side *= step;
        const Rational dist = prev_half * Rational(rng.int_in(2, 10));
        Point p = x0;
        const std::size_t axis =
            on_line ? 0 : static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(dimension)));
        const bool positive = rng.chance(1, 2);
        p.x[axis] += positive ? dist : -dist;
        if (!on_line && dimension > 1) {
            // Nudge a second coordinate to exercise irrational distances while
            // keeping the sup-norm placement inside the annulus.
            const std::size_t other = (axis + 1) % static_cast<std::size_t>(dimension);
            p.x[other] += dist * make_rational(rng.int_in(-63, 63), 64);
        }
        const Rational shell_mass = beta * running_mass;
        atoms.push_back(Atom{std::move(p), shell_mass, rng.positive_rational(64, 64)});
        running_mass += shell_mass;
    }

    // A few bystander atoms strictly beyond the (N+1)-st dilate, in disjoint
    // distance bands so they cannot collide with each other.
    const Rational beyond = half_side * step * 4;
    const int extras = static_cast<int>(rng.below(4));
    for (int e = 0; e < extras; ++e) {
        Point p = x0;
        for (int i = 0; i < dimension; ++i) {
            const Rational wobble = make_rational(rng.int_in(-64, 64), 64);
            p.x[static_cast<std::size_t>(i)] += beyond * (Rational(2 + 2 * e) + wobble / 2);
        }
        atoms.push_back(Atom{std::move(p), rng.positive_rational(64, 64),
                             rng.positive_rational(64, 64)});
    }

    Point lower = x0;
    for (auto& c : lower.x) c -= side0 / 2;
    Box base(std::move(lower), side0);
    DiscreteMeasure mu(dimension, growth_dim, std::move(atoms));
    return AnnuliInstance(std::move(mu), std::move(base), target_index);
}

CubeId smallest_doubling_cover(const DiscreteMeasure& mu, const GridFamily& family,
                               const Box& q, const DoublingParams& p) {
    long k = -floor_log2(q.side);
    if (pow2(-k) < q.side) --k;  // largest k whose cubes can contain q
    for (long depth = 0; depth < 600; ++depth, --k) {
        for (int m = 0; m <= family.dimension(); ++m) {
            const CubeId id = family.locate(m, k, q.lower);
            const Box box = family.cube_box(id);
            if (box_contains_box(box, q) && is_doubling(mu, box, p)) return id;
        }
    }
    throw invariant_error("smallest_doubling_cover: no doubling cover found in scan range");
}

}  // namespace dyadic
