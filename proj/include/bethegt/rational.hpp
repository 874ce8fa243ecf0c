#pragma once

// Exact rational scalars and a few helpers shared by every module.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bethegt {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q" (whitespace around the tokens is ignored).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// True when 2q is an integer.
inline bool is_half_integer_or_integer(const Rational& q) {
  return q.get_den() == 1 || q.get_den() == 2;
}

template <class T>
T scalar_cast(const Rational& q);

template <>
inline Rational scalar_cast<Rational>(const Rational& q) {
  return q;
}

template <>
inline double scalar_cast<double>(const Rational& q) {
  return q.get_d();
}

}  // namespace bethegt
