#pragma once

#include <vector>

#include "dyadic/measure.hpp"

namespace dyadic {

enum class KernelKind { cauchy_real, riesz };

// d-dimensional singular kernels with size constant 1 and smoothness
// exponent 1:
//   cauchy_real:  K(x,y) = (x_1-y_1)/|x-y|^2     (real part of 1/(x-y), d = 1)
//   riesz(d):     K(x,y) = (x_1-y_1)/|x-y|^{d+1}
struct Kernel {
    KernelKind kind;
    Rational growth_dim;
    Rational smoothness;     // delta
    Rational size_constant;  // C with |K(x,y)| <= C/|x-y|^d

    static Kernel cauchy_real();
    static Kernel riesz(Rational d);
};

// This module is the only floating-point corner of the library: |x-y| is
// irrational, and the weak-(1,1) experiment is statistical, not exact.
// Inputs are converted from exact rationals to long double (<= 2^-52
// relative error each) and combined with a few floating operations; the
// budget below is the documented bound per kernel evaluation.
inline constexpr double kernel_eval_rel_error = 1e-13;

long double to_long_double(const Rational& q);

long double kernel_eval(const Kernel& ker, const Point& x, const Point& y);

// T_eps f(x_i) = sum over atoms j with |x_i - x_j| > eps of
// K(x_i, x_j) f(x_j) mass_j; the truncation comparison is exact (squared
// distances against eps^2).  The _sq form takes eps^2 directly, which lets
// "half the minimum spacing" be expressed exactly even though the spacing
// itself is irrational.
std::vector<long double> apply_truncated(const DiscreteMeasure& mu, const Kernel& ker,
                                         const Rational& eps);
std::vector<long double> apply_truncated_sq(const DiscreteMeasure& mu, const Kernel& ker,
                                            const Rational& eps_squared);

// max over thresholds t in {|values|} of t * mu(|T f| > t') / ||f||_1 with
// t' = t (1 - 2^-20); the nudge makes the scan a closed-level distribution
// function, so a single atom of value v reports v.
long double weak11_statistic(const DiscreteMeasure& mu, const std::vector<long double>& values,
                             const Rational& f_l1);

}  // namespace dyadic
