#include "wcl/chaos.hpp"

#include <mutex>

namespace wcl {

void MonomialForm::add(const MultiIndex& a, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

MonomialForm MonomialForm::operator*(const MonomialForm& o) const {
  MonomialForm r;
  for (auto& [a, ca] : terms)
    for (auto& [b, cb] : o.terms) {
      MultiIndex ab = a;
      for (auto& [i, e] : b.entries()) ab.set(i, ab.get(i) + e);
      r.add(ab, ca * cb);
    }
  return r;
}

MonomialForm MonomialForm::operator+(const MonomialForm& o) const {
  MonomialForm r = *this;
  for (auto& [a, c] : o.terms) r.add(a, c);
  return r;
}

double MonomialForm::evaluate(const std::map<int, double>& point) const {
  double total = 0.0;
  for (auto& [a, c] : terms) {
    double v = to_double(c);
    for (auto& [i, e] : a.entries()) {
      double x = point.at(i);
      for (int k = 0; k < e; ++k) v *= x;
    }
    total += v;
  }
  return total;
}

ChaosElement ChaosElement::constant(const Rational& c) {
  ChaosElement f;
  f.add_term(MultiIndex{}, c);
  return f;
}

ChaosElement ChaosElement::basis(const MultiIndex& a) {
  ChaosElement f;
  f.add_term(a, 1);
  return f;
}

ChaosElement ChaosElement::coordinate(int i) { return basis(MultiIndex::delta(i)); }

ChaosElement ChaosElement::hermite(int n, int i) {
  MultiIndex a;
  a.set(i, n);
  return basis(a);
}

void ChaosElement::add_term(const MultiIndex& a, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ChaosElement::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

int ChaosElement::total_degree() const {
  int d = 0;
  for (auto& [a, c] : terms_) d = std::max(d, a.order());
  return d;
}

int ChaosElement::degree_in(int coord) const {
  int d = 0;
  for (auto& [a, c] : terms_) d = std::max(d, a.get(coord));
  return d;
}

int ChaosElement::max_coord() const {
  int m = 0;
  for (auto& [a, c] : terms_) m = std::max(m, a.max_coord());
  return m;
}

ChaosElement ChaosElement::operator+(const ChaosElement& o) const {
  ChaosElement r = *this;
  for (auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

ChaosElement ChaosElement::operator-(const ChaosElement& o) const {
  ChaosElement r = *this;
  for (auto& [a, c] : o.terms_) r.add_term(a, -c);
  return r;
}

ChaosElement ChaosElement::operator-() const {
  ChaosElement r;
  for (auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

ChaosElement ChaosElement::operator*(const Rational& c) const {
  ChaosElement r;
  if (c == 0) return r;
  for (auto& [a, ca] : terms_) r.terms_.emplace(a, ca * c);
  return r;
}

const std::vector<std::pair<int, BigInt>>& hermite_linearization(int m, int n) {
  static std::map<std::pair<int, int>, std::vector<std::pair<int, BigInt>>> cache;
  static std::mutex mu;
  if (m > n) std::swap(m, n);
  std::lock_guard lock(mu);
  auto key = std::make_pair(m, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<int, BigInt>> lin;
  for (int k = 0; k <= m; ++k)
    lin.emplace_back(m + n - 2 * k,
                     binomial_int(m, k) * binomial_int(n, k) * factorial_int(k));
  if (m + n > 64) {
    // above the memo cap, hand back a thread-local scratch value
    static thread_local std::vector<std::pair<int, BigInt>> scratch;
    scratch = std::move(lin);
    return scratch;
  }
  return cache.emplace(key, std::move(lin)).first->second;
}

namespace {

// H_a * H_b expanded over the basis; coefficients are integers.
std::vector<std::pair<MultiIndex, BigInt>> basis_product(const MultiIndex& a,
                                                         const MultiIndex& b) {
  std::vector<std::pair<MultiIndex, BigInt>> acc = {{MultiIndex{}, BigInt(1)}};
  auto ia = a.entries().begin(), ib = b.entries().begin();
  auto step = [&](int coord, int m, int n) {
    const auto& lin = hermite_linearization(m, n);
    std::vector<std::pair<MultiIndex, BigInt>> next;
    next.reserve(acc.size() * lin.size());
    for (auto& [idx, c] : acc)
      for (auto& [d, lc] : lin) {
        MultiIndex ni = idx;
        ni.set(coord, d);
        next.emplace_back(std::move(ni), c * lc);
      }
    acc = std::move(next);
  };
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      for (auto& [idx, c] : acc) {
        MultiIndex ni = idx;
        ni.set(ia->first, ia->second);
        idx = ni;
      }
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      for (auto& [idx, c] : acc) {
        MultiIndex ni = idx;
        ni.set(ib->first, ib->second);
        idx = ni;
      }
      ++ib;
    } else {
      step(ia->first, ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

}  // namespace

ChaosElement ChaosElement::operator*(const ChaosElement& o) const {
  ChaosElement r;
  for (auto& [a, ca] : terms_)
    for (auto& [b, cb] : o.terms_) {
      Rational cab = ca * cb;
      for (auto& [idx, c] : basis_product(a, b)) r.add_term(idx, cab * Rational(c));
    }
  return r;
}

ChaosElement ChaosElement::pow(unsigned n) const {
  ChaosElement r = constant(1);
  ChaosElement base = *this;
  while (n > 0) {
    if (n & 1u) r = r * base;
    base = (n >>= 1) ? base * base : base;
  }
  return r;
}

Rational expectation(const ChaosElement& f) { return f.coeff(MultiIndex{}); }

Rational inner_product(const ChaosElement& f, const ChaosElement& g) {
  // iterate the smaller term map
  const ChaosElement& small = f.term_count() <= g.term_count() ? f : g;
  const ChaosElement& large = f.term_count() <= g.term_count() ? g : f;
  Rational s = 0;
  for (auto& [a, ca] : small.terms()) {
    Rational cb = large.coeff(a);
    if (cb != 0) s += ca * cb * Rational(a.factorial());
  }
  return s;
}

namespace {

// monomial coefficients of H_n: row(n)[k] = coefficient of x^k
const std::vector<BigInt>& hermite_monomial_row(int n) {
  static std::vector<std::vector<BigInt>> rows = {{BigInt(1)}, {BigInt(0), BigInt(1)}};
  static std::mutex mu;
  std::lock_guard lock(mu);
  while (static_cast<int>(rows.size()) <= n) {
    int m = static_cast<int>(rows.size()) - 1;  // have H_m, build H_{m+1} = x H_m - m H_{m-1}
    std::vector<BigInt> next(m + 2, BigInt(0));
    for (int k = 0; k <= m; ++k) next[k + 1] += rows[m][k];
    for (int k = 0; k < m; ++k) next[k] -= BigInt(m) * rows[m - 1][k];
    rows.push_back(std::move(next));
  }
  return rows[n];
}

// x^n in the 1-D Hermite basis: row(n)[m] = coefficient of H_m (integers)
const std::vector<BigInt>& power_hermite_row(int n) {
  static std::vector<std::vector<BigInt>> rows = {{BigInt(1)}};
  static std::mutex mu;
  std::lock_guard lock(mu);
  while (static_cast<int>(rows.size()) <= n) {
    // multiply the last row by x, using x H_m = H_{m+1} + m H_{m-1}
    const auto& prev = rows.back();
    int m = static_cast<int>(rows.size()) - 1;
    std::vector<BigInt> next(m + 2, BigInt(0));
    for (int k = 0; k <= m; ++k) {
      next[k + 1] += prev[k];
      if (k > 0) next[k - 1] += BigInt(k) * prev[k];
    }
    rows.push_back(std::move(next));
  }
  return rows[n];
}

}  // namespace

MonomialForm to_monomial(const ChaosElement& f) {
  MonomialForm p;
  for (auto& [a, c] : f.terms()) {
    std::vector<std::pair<MultiIndex, BigInt>> acc = {{MultiIndex{}, BigInt(1)}};
    for (auto& [coord, e] : a.entries()) {
      const auto& row = hermite_monomial_row(e);
      std::vector<std::pair<MultiIndex, BigInt>> next;
      for (auto& [idx, cc] : acc)
        for (int k = 0; k < static_cast<int>(row.size()); ++k) {
          if (row[k] == 0) continue;
          MultiIndex ni = idx;
          ni.set(coord, k);
          next.emplace_back(std::move(ni), cc * row[k]);
        }
      acc = std::move(next);
    }
    for (auto& [idx, cc] : acc) p.add(idx, c * Rational(cc));
  }
  return p;
}

ChaosElement from_monomial(const MonomialForm& p) {
  ChaosElement f;
  for (auto& [a, c] : p.terms) {
    std::vector<std::pair<MultiIndex, BigInt>> acc = {{MultiIndex{}, BigInt(1)}};
    for (auto& [coord, e] : a.entries()) {
      const auto& row = power_hermite_row(e);
      std::vector<std::pair<MultiIndex, BigInt>> next;
      for (auto& [idx, cc] : acc)
        for (int m = 0; m < static_cast<int>(row.size()); ++m) {
          if (row[m] == 0) continue;
          MultiIndex ni = idx;
          ni.set(coord, m);
          next.emplace_back(std::move(ni), cc * row[m]);
        }
      acc = std::move(next);
    }
    for (auto& [idx, cc] : acc) f.add_term(idx, c * Rational(cc));
  }
  return f;
}

ChaosElement substitute(const ChaosElement& f, const std::map<int, ChaosElement>& map) {
  MonomialForm p = to_monomial(f);
  std::map<std::pair<int, int>, ChaosElement> power_cache;
  auto coord_power = [&](int i, int e) -> const ChaosElement& {
    auto key = std::make_pair(i, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    auto mit = map.find(i);
    ChaosElement base = mit != map.end() ? mit->second : ChaosElement::coordinate(i);
    return power_cache.emplace(key, base.pow(static_cast<unsigned>(e))).first->second;
  };
  ChaosElement out;
  for (auto& [a, c] : p.terms) {
    ChaosElement prod = ChaosElement::constant(c);
    for (auto& [i, e] : a.entries()) prod = prod * coord_power(i, e);
    out = out + prod;
  }
  return out;
}

double hermite_value(int n, double x) {
  double h0 = 1.0, h1 = x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double evaluate(const ChaosElement& f, const std::map<int, double>& point) {
  double total = 0.0;
  for (auto& [a, c] : f.terms()) {
    double v = to_double(c);
    for (auto& [i, e] : a.entries()) v *= hermite_value(e, point.at(i));
    total += v;
  }
  return total;
}

}  // namespace wcl
