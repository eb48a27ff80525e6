#include "dyadic/measure.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>
#include <utility>

namespace dyadic {

DoublingParams::DoublingParams(Rational a, Rational b)
    : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha <= 3) throw hypothesis_error("DoublingParams: alpha must exceed 3");
    if (beta <= 1) throw hypothesis_error("DoublingParams: beta must exceed 1");
}

DiscreteMeasure::DiscreteMeasure(int dimension, Rational growth_dim, std::vector<Atom> atoms)
    : n_(dimension), growth_dim_(std::move(growth_dim)), atoms_(std::move(atoms)) {
    if (n_ < 1) throw std::invalid_argument("DiscreteMeasure: dimension must be >= 1");
    if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: needs at least one atom");
    if (sgn(growth_dim_) <= 0 || growth_dim_ > n_)
        throw std::invalid_argument("DiscreteMeasure: growth dimension must lie in (0, n]");

    total_mass_ = 0;
    f_l1_ = 0;
    for (const auto& a : atoms_) {
        if (a.x.dim() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("DiscreteMeasure: atom dimension mismatch");
        if (sgn(a.mass) <= 0) throw std::invalid_argument("DiscreteMeasure: nonpositive mass");
        if (sgn(a.f) < 0) throw std::invalid_argument("DiscreteMeasure: negative density value");
        total_mass_ += a.mass;
        f_l1_ += a.f * a.mass;
    }

    bbox_min_ = atoms_[0].x;
    bbox_max_ = atoms_[0].x;
    for (const auto& a : atoms_) {
        for (int i = 0; i < n_; ++i) {
            if (a.x[static_cast<std::size_t>(i)] < bbox_min_[static_cast<std::size_t>(i)])
                bbox_min_[static_cast<std::size_t>(i)] = a.x[static_cast<std::size_t>(i)];
            if (a.x[static_cast<std::size_t>(i)] > bbox_max_[static_cast<std::size_t>(i)])
                bbox_max_[static_cast<std::size_t>(i)] = a.x[static_cast<std::size_t>(i)];
        }
    }

    sup_diameter_ = 0;
    min_sup_gap_ = 0;
    min_squared_gap_ = 0;
    bool first_pair = true;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
            const Rational ds = sup_distance(atoms_[i].x, atoms_[j].x);
            if (sgn(ds) == 0)
                throw std::invalid_argument("DiscreteMeasure: duplicate atom points");
            const Rational d2 = squared_distance(atoms_[i].x, atoms_[j].x);
            if (ds > sup_diameter_) sup_diameter_ = ds;
            if (first_pair || ds < min_sup_gap_) min_sup_gap_ = ds;
            if (first_pair || d2 < min_squared_gap_) min_squared_gap_ = d2;
            first_pair = false;
        }
    }

    by_axis0_.resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) by_axis0_[i] = i;
    std::sort(by_axis0_.begin(), by_axis0_.end(), [this](std::size_t a, std::size_t b) {
        return atoms_[a].x[0] < atoms_[b].x[0];
    });
}

const Rational& DiscreteMeasure::min_sup_gap() const {
    if (atoms_.size() < 2) throw std::logic_error("min_sup_gap: single-atom measure");
    return min_sup_gap_;
}

const Rational& DiscreteMeasure::min_squared_gap() const {
    if (atoms_.size() < 2) throw std::logic_error("min_squared_gap: single-atom measure");
    return min_squared_gap_;
}

namespace {

template <typename Fn>
void for_atoms_in_box(const DiscreteMeasure& mu, const std::vector<std::size_t>& by_axis0,
                      const Box& b, Fn&& fn) {
    const auto& atoms = mu.atoms();
    const Rational hi0 = b.lower[0] + b.side;
    auto lo_it = std::lower_bound(by_axis0.begin(), by_axis0.end(), b.lower[0],
                                  [&](std::size_t idx, const Rational& v) {
                                      return atoms[idx].x[0] < v;
                                  });
    for (auto it = lo_it; it != by_axis0.end(); ++it) {
        const Atom& a = atoms[*it];
        if (a.x[0] >= hi0) break;
        bool inside = true;
        for (std::size_t i = 1; i < a.x.dim(); ++i) {
            if (a.x[i] < b.lower[i] || a.x[i] >= b.lower[i] + b.side) {
                inside = false;
                break;
            }
        }
        if (inside) fn(*it);
    }
}

}  // namespace

Rational DiscreteMeasure::box_mass(const Box& b) const {
    Rational s(0);
    for_atoms_in_box(*this, by_axis0_, b, [&](std::size_t i) { s += atoms_[i].mass; });
    return s;
}

Rational DiscreteMeasure::box_integral_f(const Box& b) const {
    Rational s(0);
    for_atoms_in_box(*this, by_axis0_, b, [&](std::size_t i) { s += atoms_[i].f * atoms_[i].mass; });
    return s;
}

Rational DiscreteMeasure::box_integral(const Box& b, const std::vector<Rational>& w) const {
    if (w.size() != atoms_.size())
        throw std::invalid_argument("box_integral: weight vector size mismatch");
    Rational s(0);
    for_atoms_in_box(*this, by_axis0_, b, [&](std::size_t i) { s += w[i] * atoms_[i].mass; });
    return s;
}

std::vector<std::size_t> DiscreteMeasure::atoms_in_box(const Box& b) const {
    std::vector<std::size_t> out;
    for_atoms_in_box(*this, by_axis0_, b, [&](std::size_t i) { out.push_back(i); });
    std::sort(out.begin(), out.end());
    return out;
}

Rational DiscreteMeasure::closed_ball_mass_sq(const Point& center, const Rational& r2) const {
    Rational s(0);
    for (const auto& a : atoms_) {
        if (squared_distance(a.x, center) <= r2) s += a.mass;
    }
    return s;
}

std::optional<std::size_t> DiscreteMeasure::find_atom(const Point& x) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].x == x) return i;
    return std::nullopt;
}

Rational covering_constant(int dimension) {
    if (dimension < 1) throw std::invalid_argument("covering_constant: dimension must be >= 1");
    const int p = (dimension % 2 == 0) ? dimension + 1 : dimension + 2;
    const Integer rn_num = ceil_sqrt(Integer(65536) * dimension);
    return Rational(3 * p) * make_rational(rn_num, 256);
}

Rational default_alpha(int dimension) { return covering_constant(dimension) * 6; }

std::pair<long, unsigned long> growth_exponent(const Rational& growth_dim) {
    const Integer& num = growth_dim.get_num();
    const Integer& den = growth_dim.get_den();
    if (!num.fits_slong_p() || !den.fits_ulong_p())
        throw hypothesis_error("growth dimension too large to use as an exponent");
    return {num.get_si(), den.get_ui()};
}

Rational default_beta(int dimension, const Rational& growth_dim) {
    const Rational c = covering_constant(dimension);
    const auto [num, den] = growth_exponent(growth_dim);
    return pow_directed(c * c * 6, num, den, RoundDir::up) + 1;
}

DoublingParams default_doubling_params(int dimension, const Rational& growth_dim) {
    return DoublingParams(default_alpha(dimension), default_beta(dimension, growth_dim));
}

bool is_doubling(const DiscreteMeasure& mu, const Box& b, const DoublingParams& p) {
    return mu.box_mass(dilate(b, p.alpha)) <= p.beta * mu.box_mass(b);
}

Rational growth_constant(const DiscreteMeasure& mu, const Rational& r_min) {
    if (sgn(r_min) <= 0) throw std::invalid_argument("growth_constant: r_min must be positive");
    const auto [dn, dd] = growth_exponent(mu.growth_dim());
    const Rational r_min2 = r_min * r_min;
    Rational best(0);
    for (const auto& center : mu.atoms()) {
        std::vector<Rational> candidates{r_min2};
        for (const auto& other : mu.atoms()) {
            const Rational d2 = squared_distance(center.x, other.x);
            if (d2 >= r_min2) candidates.push_back(d2);
        }
        for (const auto& r2 : candidates) {
            // r^d = (r^2)^(d/2), rounded down so the reported quotient is an
            // upper bound for the true one.
            const Rational denom = pow_directed(r2, dn, 2 * dd, RoundDir::down);
            if (sgn(denom) <= 0) throw invariant_error("growth_constant: degenerate power");
            const Rational q = mu.closed_ball_mass_sq(center.x, r2) / denom;
            if (q > best) best = q;
        }
    }
    return best;
}

namespace {

bool box_contains_support(const DiscreteMeasure& mu, const Box& b) {
    for (std::size_t i = 0; i < b.dim(); ++i) {
        if (mu.support_min()[i] < b.lower[i]) return false;
        if (mu.support_max()[i] >= b.lower[i] + b.side) return false;
    }
    return true;
}

// Atoms inside the union of all filtration-0 ancestors of a box whose lower
// corner is `anchor`: per axis that union is [0, inf) when the coordinate is
// >= 0 and (-inf, 0) otherwise, because 0 is a grid hyperplane of the
// standard dyadic grid at every generation.
std::size_t ancestor_limit_count(const DiscreteMeasure& mu, const Point& anchor) {
    std::size_t count = 0;
    for (const auto& a : mu.atoms()) {
        bool inside = true;
        for (std::size_t i = 0; i < anchor.dim(); ++i) {
            const bool nonneg = sgn(anchor[i]) >= 0;
            if (nonneg ? sgn(a.x[i]) < 0 : sgn(a.x[i]) >= 0) {
                inside = false;
                break;
            }
        }
        if (inside) ++count;
    }
    return count;
}

}  // namespace

CubeId doubling_ancestor(const DiscreteMeasure& mu, const GridFamily& family,
                         const CubeId& start, const DoublingParams& p) {
    const long k_floor = start.k - 2000;
    CubeId cur = start;
    const std::size_t limit_count =
        start.m == 0 ? ancestor_limit_count(mu, family.cube_box(start).lower) : 0;
    while (true) {
        const Box box = family.cube_box(cur);
        if (is_doubling(mu, box, p)) return cur;
        if (cur.m == 0) {
            // The ascent can only ever capture atoms in the ancestor union;
            // once it has them all and the dilate already sees everything,
            // no coarser cube will fare better.
            if (mu.atoms_in_box(box).size() == limit_count &&
                box_contains_support(mu, dilate(box, p.alpha))) {
                throw ascent_stuck("doubling_ancestor: filtration-0 ancestors capped below beta");
            }
        }
        cur = family.parent(cur);
        if (cur.k < k_floor)
            throw invariant_error("doubling_ancestor: generation floor reached");
    }
}

CubeId small_doubling_cube(const DiscreteMeasure& mu, const GridFamily& family,
                           const Point& x, const DoublingParams& p, long k_start) {
    if (!mu.find_atom(x))
        throw std::invalid_argument("small_doubling_cube: x is not an atom of the measure");
    const Rational c = covering_constant(family.dimension());
    const Rational threshold =
        pow_directed(c * p.alpha, family.dimension(), 1, RoundDir::up);
    if (p.beta <= threshold) {
        std::cerr << "small_doubling_cube: beta <= (c alpha)^n; the general-measure "
                     "hypothesis fails, continuing (atomic descent still terminates)\n";
    }
    for (long k = k_start; k <= k_start + 4000; ++k) {
        for (int m = 0; m <= family.dimension(); ++m) {
            CubeId id = family.locate(m, k, x);
            if (is_doubling(mu, family.cube_box(id), p)) return id;
        }
    }
    throw invariant_error("small_doubling_cube: no doubling cube within descent budget");
}

}  // namespace dyadic
