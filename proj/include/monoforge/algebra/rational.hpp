#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace monoforge {

/// Exact rational backed by GMP. mpq_class keeps values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form. The two-argument mpq_class constructor does not
/// reduce, so every fraction built from parts goes through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", "p", or a finite decimal such as "0.25" or "-1.5e-3" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; the denominator is always written, even when 1.
std::string to_fraction_string(const Rational& q);

/// Exact power with a non-negative integer exponent.
Rational pow(const Rational& base, unsigned long exponent);

double to_double(const Rational& q);

}  // namespace monoforge
