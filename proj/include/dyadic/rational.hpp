#pragma once

#include <gmpxx.h>

#include <string>

namespace dyadic {

using Integer = mpz_class;

// Always canonical: lowest terms, positive denominator.  Arithmetic and
// comparisons are exact; nothing in the geometric core ever rounds.
using Rational = mpq_class;

Rational make_rational(Integer num, Integer den);

// 2^e for any sign of e.
Rational pow2(long e);

// Unique L with 2^L <= x < 2^{L+1}; requires x > 0.
long floor_log2(const Rational& x);

Integer rational_floor(const Rational& x);

bool is_integer(const Rational& x);

Rational rational_abs(const Rational& x);

// Smallest s >= 0 with s*s >= x; requires x >= 0.
Integer ceil_sqrt(const Integer& x);

enum class RoundDir { down, up };

// Directed evaluation of base^(num/den) for base >= 0, den >= 1.  The result
// errs toward `dir` and is within a relative 2^-prec_bits of the true value;
// it is exact when den == 1.  Used only where fractional growth dimensions
// force irrational powers (growth constants, annuli diagnostics, beta).
Rational pow_directed(const Rational& base, long num, unsigned long den,
                      RoundDir dir, unsigned prec_bits = 96);

// Canonical "a" or "a/b" with b > 0.
std::string to_string(const Rational& x);

// Accepts "a", "a/b" and decimal strings like "-12.75" (converted exactly,
// denominator a power of ten).  Throws parse_error on anything else.
Rational parse_rational(const std::string& text);

}  // namespace dyadic
