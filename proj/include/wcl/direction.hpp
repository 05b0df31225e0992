#pragma once

#include <map>

#include "wcl/rational.hpp"

namespace wcl {

/// Finite rational coordinate vector of a Cameron-Martin direction theta
/// with respect to the fixed orthonormal basis. norm_sq is kept in sync with
/// the coordinates.
class Direction {
 public:
  Direction() = default;

  static Direction unit(int coord) {
    Direction d;
    d.set(coord, 1);
    return d;
  }

  void set(int coord, const Rational& value) {
    auto it = coords_.find(coord);
    if (it != coords_.end()) {
      norm_sq_ -= it->second * it->second;
      coords_.erase(it);
    }
    if (value != 0) {
      coords_.emplace(coord, value);
      norm_sq_ += value * value;
    }
  }

  Rational get(int coord) const {
    auto it = coords_.find(coord);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  const std::map<int, Rational>& coords() const { return coords_; }
  const Rational& norm_sq() const { return norm_sq_; }
  bool is_zero() const { return coords_.empty(); }

  Direction operator*(const Rational& c) const {
    Direction d;
    for (auto& [i, v] : coords_) d.set(i, v * c);
    return d;
  }

  bool operator==(const Direction& o) const { return coords_ == o.coords_; }

 private:
  std::map<int, Rational> coords_;
  Rational norm_sq_ = 0;
};

}  // namespace wcl
