#include "dyadic/geometry.hpp"

#include <stdexcept>

namespace dyadic {

Box::Box(Point lower_corner, Rational side_length)
    : lower(std::move(lower_corner)), side(std::move(side_length)) {
    if (sgn(side) <= 0) throw std::invalid_argument("Box: side must be positive");
}

Point Box::center() const {
    Point c = lower;
    const Rational half = side / 2;
    for (auto& v : c.x) v += half;
    return c;
}

bool Box::contains(const Point& p) const {
    if (p.dim() != dim()) throw std::invalid_argument("Box::contains: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) {
        if (p[i] < lower[i] || p[i] >= lower[i] + side) return false;
    }
    return true;
}

Ball::Ball(Point center_point, Rational r)
    : center(std::move(center_point)), radius(std::move(r)) {
    if (sgn(radius) <= 0) throw std::invalid_argument("Ball: radius must be positive");
}

bool box_contains_box(const Box& outer, const Box& inner) {
    if (outer.dim() != inner.dim())
        throw std::invalid_argument("box_contains_box: dimension mismatch");
    for (std::size_t i = 0; i < outer.dim(); ++i) {
        if (outer.lower[i] > inner.lower[i]) return false;
        if (inner.lower[i] + inner.side > outer.lower[i] + outer.side) return false;
    }
    return true;
}

Box dilate(const Box& b, const Rational& factor) {
    if (factor < 1) throw std::invalid_argument("dilate: factor must be >= 1");
    // Same center, side scaled: lower moves by side*(1-factor)/2.
    const Rational shift = b.side * (Rational(1) - factor) / 2;
    Point lower = b.lower;
    for (auto& v : lower.x) v += shift;
    return Box(std::move(lower), b.side * factor);
}

Box circumscribed_box(const Ball& b) {
    Point lower = b.center;
    for (auto& v : lower.x) v -= b.radius;
    return Box(std::move(lower), b.radius * 2);
}

bool ball_in_box(const Box& outer, const Ball& b) {
    return box_contains_box(outer, circumscribed_box(b));
}

bool boxes_intersect(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("boxes_intersect: dimension mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.lower[i] + a.side <= b.lower[i]) return false;
        if (b.lower[i] + b.side <= a.lower[i]) return false;
    }
    return true;
}

Rational sup_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sup_distance: dimension mismatch");
    Rational best(0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Rational d = rational_abs(a[i] - b[i]);
        if (d > best) best = d;
    }
    return best;
}

Rational squared_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("squared_distance: dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Rational d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace dyadic
