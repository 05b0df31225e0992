#pragma once

#include <map>
#include <vector>

#include "wcl/multi_index.hpp"
#include "wcl/rational.hpp"

namespace wcl {

class ChaosElement;

/// The same sparse shape as ChaosElement but with monomial semantics:
/// a term (a, c) means c * prod_i xi_i^{a_i}.
struct MonomialForm {
  std::map<MultiIndex, Rational> terms;

  void add(const MultiIndex& a, const Rational& c);
  bool operator==(const MonomialForm&) const = default;

  MonomialForm operator*(const MonomialForm& o) const;
  MonomialForm operator+(const MonomialForm& o) const;
  double evaluate(const std::map<int, double>& point) const;
};

/// Exact finite linear combination sum_a c_a H_a of multivariate Hermite
/// basis functionals, with rational coefficients. Canonical sparse storage:
/// zero coefficients are pruned eagerly, so operator== is semantic equality.
/// All operations are pure; values are safe to share across threads.
class ChaosElement {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  ChaosElement() = default;

  static ChaosElement constant(const Rational& c);
  static ChaosElement basis(const MultiIndex& a);
  /// xi_i as a chaos element, i.e. H_1 at coordinate i.
  static ChaosElement coordinate(int i);
  /// H_n at coordinate i.
  static ChaosElement hermite(int n, int i);

  void add_term(const MultiIndex& a, const Rational& c);
  Rational coeff(const MultiIndex& a) const;
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  int total_degree() const;          // max order(a) over stored terms; 0 for zero element
  int degree_in(int coord) const;    // max a_coord over stored terms
  int max_coord() const;

  ChaosElement operator+(const ChaosElement& o) const;
  ChaosElement operator-(const ChaosElement& o) const;
  ChaosElement operator-() const;
  ChaosElement operator*(const Rational& c) const;
  ChaosElement operator*(const ChaosElement& o) const;
  ChaosElement pow(unsigned n) const;

  bool operator==(const ChaosElement&) const = default;

 private:
  TermMap terms_;
};

inline ChaosElement multiply(const ChaosElement& f, const ChaosElement& g) { return f * g; }

/// Coefficient of the empty multi-index: E[H_a] = 0 for a != 0, E[1] = 1.
Rational expectation(const ChaosElement& f);

/// <F, G> = sum_a f_a g_a a!  (orthogonality of {H_a} with <H_a,H_a> = a!).
Rational inner_product(const ChaosElement& f, const ChaosElement& g);

/// Single-coordinate Hermite linearization
///   H_m H_n = sum_{k=0}^{min(m,n)} C(m,k) C(n,k) k! H_{m+n-2k},
/// returned as (degree, coefficient) pairs. Memoized up to `order` 64.
const std::vector<std::pair<int, BigInt>>& hermite_linearization(int m, int n);

MonomialForm to_monomial(const ChaosElement& f);
ChaosElement from_monomial(const MonomialForm& p);

/// Replaces xi_i by map[i] (identity where absent), expanding exactly in the
/// chaos algebra. Routed through the monomial form.
ChaosElement substitute(const ChaosElement& f, const std::map<int, ChaosElement>& map);

/// Numeric evaluation; per-coordinate Hermite values by the three-term
/// recurrence H_{n+1} = x H_n - n H_{n-1}.
double evaluate(const ChaosElement& f, const std::map<int, double>& point);
double hermite_value(int n, double x);

}  // namespace wcl
