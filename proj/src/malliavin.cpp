#include "wcl/malliavin.hpp"

namespace wcl {

ChaosElement derive_coord(const ChaosElement& f, int coord) {
  ChaosElement r;
  for (auto& [a, c] : f.terms()) {
    int e = a.get(coord);
    if (e == 0) continue;
    r.add_term(a.bumped(coord, -1), c * e);
  }
  return r;
}

ChaosElement derive(const ChaosElement& f, const Direction& theta) {
  ChaosElement r;
  for (auto& [i, t] : theta.coords()) r = r + derive_coord(f, i) * t;
  return r;
}

ChaosElement wiener_integral(const Direction& theta) {
  ChaosElement r;
  for (auto& [i, t] : theta.coords()) r.add_term(MultiIndex::delta(i), t);
  return r;
}

ChaosElement skorokhod(const ChaosElement& f, const Direction& theta) {
  return -derive(f, theta) + wiener_integral(theta) * f;
}

ChaosElement exp_derive(const ChaosElement& f, const Direction& theta) {
  ChaosElement sum = f;
  ChaosElement term = f;
  Rational inv_fact = 1;
  int deg = f.total_degree();
  for (int n = 1; n <= deg; ++n) {
    term = derive(term, theta);
    if (term.is_zero()) break;
    inv_fact /= n;
    sum = sum + term * inv_fact;
  }
  return sum;
}

ChaosElement skorokhod_power_one(const Direction& theta, int n) {
  ChaosElement r = ChaosElement::constant(1);
  for (int k = 0; k < n; ++k) r = skorokhod(r, theta);
  return r;
}

TruncatedExponential exp_skorokhod_one(const Direction& theta, int order) {
  TruncatedExponential te;
  te.order = order;
  te.direction = theta;
  ChaosElement term = ChaosElement::constant(1);
  te.element = term;
  Rational inv_fact = 1;
  for (int n = 1; n <= order; ++n) {
    term = skorokhod(term, theta);
    inv_fact /= n;
    te.element = te.element + term * inv_fact;
  }
  return te;
}

namespace {

Json direction_json(const Direction& theta) {
  Json j = Json::object();
  for (auto& [i, v] : theta.coords()) j[std::to_string(i)] = format_rational(v);
  return j;
}

}  // namespace

VerificationReport verify_adjoint(const ChaosElement& f, const ChaosElement& g,
                                  const Direction& theta) {
  Rational lhs = expectation(derive(f, theta) * g);
  Rational rhs = expectation(f * skorokhod(g, theta));
  VerificationReport rep;
  rep.identity = "adjoint";
  rep.lhs = format_rational(lhs);
  rep.rhs = format_rational(rhs);
  rep.pass = lhs == rhs;
  rep.params["theta"] = direction_json(theta);
  return rep;
}

VerificationReport verify_cm(const ChaosElement& f, const Direction& theta) {
  Rational lhs = expectation(exp_derive(f, theta));
  int order = f.total_degree();
  Rational rhs = inner_product(f, exp_skorokhod_one(theta, order).element);
  VerificationReport rep;
  rep.identity = "cm";
  rep.lhs = format_rational(lhs);
  rep.rhs = format_rational(rhs);
  rep.pass = lhs == rhs;
  rep.params["theta"] = direction_json(theta);
  rep.params["truncation_order"] = order;
  return rep;
}

}  // namespace wcl
