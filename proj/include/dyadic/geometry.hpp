#pragma once

#include <vector>

#include "dyadic/rational.hpp"

namespace dyadic {

struct Point {
    std::vector<Rational> x;

    Point() = default;
    explicit Point(std::vector<Rational> coords) : x(std::move(coords)) {}

    std::size_t dim() const { return x.size(); }
    const Rational& operator[](std::size_t i) const { return x[i]; }
    Rational& operator[](std::size_t i) { return x[i]; }
    bool operator==(const Point& other) const { return x == other.x; }
};

// The half-open cube prod_i [lower_i, lower_i + side).  Points on a lower
// face belong to the box, points on an upper face do not; this makes every
// dyadic generation an exact partition.
struct Box {
    Point lower;
    Rational side;

    Box(Point lower_corner, Rational side_length);

    std::size_t dim() const { return lower.dim(); }
    Rational upper(std::size_t i) const { return lower[i] + side; }
    Point center() const;
    bool contains(const Point& p) const;
    bool operator==(const Box& other) const { return lower == other.lower && side == other.side; }
};

struct Ball {
    Point center;
    Rational radius;

    Ball(Point center_point, Rational r);

    std::size_t dim() const { return center.dim(); }
};

// Half-open containment: lower_i(outer) <= lower_i(inner) and
// upper_i(inner) <= upper_i(outer) for every axis.
bool box_contains_box(const Box& outer, const Box& inner);

// Concentric dilation by factor >= 1.
Box dilate(const Box& b, const Rational& factor);

// The axis-parallel cube of side 2r around the ball's center.  Ball-in-box
// containment is decided through this box everywhere in the library, so no
// square root is ever needed.
Box circumscribed_box(const Ball& b);

bool ball_in_box(const Box& outer, const Ball& b);

// Nonempty intersection of half-open boxes.
bool boxes_intersect(const Box& a, const Box& b);

Rational sup_distance(const Point& a, const Point& b);
Rational squared_distance(const Point& a, const Point& b);

}  // namespace dyadic
