#pragma once

#include <compare>
#include <map>
#include <numeric>

#include "wcl/rational.hpp"

namespace wcl {

/// Finitely supported exponent vector indexing the Hermite basis.
/// Coordinates are 1-based; zero exponents are never stored, so structural
/// equality of the underlying map is semantic equality.
class MultiIndex {
 public:
  using Map = std::map<int, int>;

  MultiIndex() = default;

  static MultiIndex delta(int coord) {
    MultiIndex a;
    a.set(coord, 1);
    return a;
  }

  void set(int coord, int exponent) {
    if (coord < 1) throw std::invalid_argument("MultiIndex: coordinate must be >= 1");
    if (exponent < 0) throw std::invalid_argument("MultiIndex: exponent must be >= 0");
    if (exponent == 0)
      entries_.erase(coord);
    else
      entries_[coord] = exponent;
  }

  int get(int coord) const {
    auto it = entries_.find(coord);
    return it == entries_.end() ? 0 : it->second;
  }

  MultiIndex bumped(int coord, int by) const {
    MultiIndex a = *this;
    a.set(coord, a.get(coord) + by);
    return a;
  }

  int order() const {
    int s = 0;
    for (auto& [i, e] : entries_) s += e;
    return s;
  }

  BigInt factorial() const {
    BigInt r = 1;
    for (auto& [i, e] : entries_) r *= factorial_int(static_cast<unsigned>(e));
    return r;
  }

  bool empty() const { return entries_.empty(); }
  int max_coord() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  const Map& entries() const { return entries_; }

  bool operator==(const MultiIndex& o) const = default;
  auto operator<=>(const MultiIndex& o) const { return entries_ <=> o.entries_; }

 private:
  Map entries_;
};

}  // namespace wcl
