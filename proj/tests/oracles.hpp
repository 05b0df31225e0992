#pragma once

// Test-only oracles, independent of the chaos-algebra implementation path:
// monomial arithmetic plus raw Gaussian moments.

#include "wcl/chaos.hpp"
#include "wcl/generator.hpp"

namespace wcl::test {

// E[xi^n] = (n-1)!! for even n, 0 for odd n
inline BigInt gaussian_moment(int n) {
  if (n % 2 == 1) return 0;
  BigInt r = 1;
  for (int k = n - 1; k >= 1; k -= 2) r *= k;
  return r;
}

// expectation of a monomial-form polynomial by independent coordinate moments
inline Rational monomial_expectation(const MonomialForm& p) {
  Rational s = 0;
  for (auto& [a, c] : p.terms) {
    BigInt m = 1;
    for (auto& [i, e] : a.entries()) {
      m *= gaussian_moment(e);
      if (m == 0) break;
    }
    if (m != 0) s += c * Rational(m);
  }
  return s;
}

// E[F * G] computed entirely on the monomial side
inline Rational monomial_product_expectation(const ChaosElement& f, const ChaosElement& g) {
  return monomial_expectation(to_monomial(f) * to_monomial(g));
}

inline ChaosElement xi(int i) { return ChaosElement::coordinate(i); }
inline ChaosElement H(int n, int i) { return ChaosElement::hermite(n, i); }
inline ChaosElement C(long long v) { return ChaosElement::constant(v); }

}  // namespace wcl::test
