#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tslice {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p/q", an integer, or a finite decimal ("-0.25", "1e-3", "2.5E2") exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Largest integer not above q.
mpz_class floor(const Rational& q);

mpz_class factorial(unsigned long n);

/// q^k for k >= 0.
Rational pow(const Rational& q, unsigned long k);

} // namespace tslice
