#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace wcl {

using BigInt = boost::multiprecision::cpp_int;

/// Exact coefficient field: arbitrary-precision rationals, always kept in
/// lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial_int(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial_int(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

/// Parses "p", "-p" or "p/q" (decimal digits). Throws std::invalid_argument
/// on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

}  // namespace wcl
