#pragma once

#include <optional>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/geometry.hpp"
#include "dyadic/grids.hpp"

namespace dyadic {

struct Atom {
    Point x;
    Rational mass;  // > 0
    Rational f;     // >= 0, density value at the atom
};

struct DoublingParams {
    Rational alpha;  // > 3
    Rational beta;   // > 1

    DoublingParams(Rational a, Rational b);
};

// Finite atomic measure with a nonnegative density f and a growth dimension
// d in (0, n].  All integrals are finite sums over atoms; box membership is
// half-open like everything else in the library.
class DiscreteMeasure {
public:
    DiscreteMeasure(int dimension, Rational growth_dim, std::vector<Atom> atoms);

    int dimension() const { return n_; }
    const Rational& growth_dim() const { return growth_dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const Rational& total_mass() const { return total_mass_; }
    const Rational& f_l1() const { return f_l1_; }

    Rational box_mass(const Box& b) const;
    Rational box_integral_f(const Box& b) const;
    Rational box_integral(const Box& b, const std::vector<Rational>& atom_weights) const;
    std::vector<std::size_t> atoms_in_box(const Box& b) const;

    // Mass of the closed Euclidean ball of squared radius r2 around center.
    Rational closed_ball_mass_sq(const Point& center, const Rational& r2) const;

    // Support geometry in the sup norm (0-diameter for a single atom).
    const Rational& sup_diameter() const { return sup_diameter_; }
    const Rational& min_sup_gap() const;      // requires size() >= 2
    const Rational& min_squared_gap() const;  // Euclidean^2, requires size() >= 2
    const Point& support_min() const { return bbox_min_; }
    const Point& support_max() const { return bbox_max_; }

    std::optional<std::size_t> find_atom(const Point& x) const;

private:
    int n_;
    Rational growth_dim_;
    std::vector<Atom> atoms_;
    Rational total_mass_;
    Rational f_l1_;
    Rational sup_diameter_;
    Rational min_sup_gap_;
    Rational min_squared_gap_;
    Point bbox_min_, bbox_max_;
    std::vector<std::size_t> by_axis0_;  // atom indices sorted by first coordinate
};

// Rational stand-in for the covering family's diameter constant:
// c_star(n) = 3 p r_n with r_n = ceil(256 sqrt(n))/256 >= sqrt(n), so every
// comparison against it stays rational and errs on the safe side.
Rational covering_constant(int dimension);

// Default doubling parameters: alpha = 6 c_star and beta = (6 c_star^2)^d + 1,
// the latter rounded up when the growth dimension is fractional.
Rational default_alpha(int dimension);
Rational default_beta(int dimension, const Rational& growth_dim);
DoublingParams default_doubling_params(int dimension, const Rational& growth_dim);

// growth_dim as an exact fraction (num, den) for directed power evaluation.
std::pair<long, unsigned long> growth_exponent(const Rational& growth_dim);

// mu(alpha b) <= beta mu(b); two empty masses count as doubling.
bool is_doubling(const DiscreteMeasure& mu, const Box& b, const DoublingParams& p);

// Certified upper bound for the polynomial-growth constant sup mu(B(x,r))/r^d
// over atom centers and radii r >= r_min.  Candidate radii are the realized
// distances from each center (the supremum over r is attained at those jump
// points, or at r_min itself).
Rational growth_constant(const DiscreteMeasure& mu, const Rational& r_min);

// Thrown when a dyadic ascent in filtration 0 provably never reaches a
// doubling cube: the union of ancestors of a filtration-0 cube is a product
// of coordinate half-lines through 0, and mass outside it can keep the
// alpha-dilate permanently too heavy.  Shifted filtrations never get stuck.
struct ascent_stuck : std::runtime_error {
    explicit ascent_stuck(const std::string& what) : std::runtime_error(what) {}
};

// First (alpha,beta)-doubling cube along start, parent(start), ...
CubeId doubling_ancestor(const DiscreteMeasure& mu, const GridFamily& family,
                         const CubeId& start, const DoublingParams& p);

// First (alpha,beta)-doubling cube containing the atom at x, scanning
// generations k_start, k_start+1, ... across all filtrations.  Warns on
// stderr when beta is at or below (c_star alpha)^n; for atomic measures the
// descent terminates regardless.
CubeId small_doubling_cube(const DiscreteMeasure& mu, const GridFamily& family,
                           const Point& x, const DoublingParams& p, long k_start);

}  // namespace dyadic
