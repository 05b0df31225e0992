#include "wcl/field.hpp"

namespace wcl {

std::vector<PredictabilityViolation> validate_predictable(const PredictableField& z) {
  std::vector<PredictabilityViolation> out;
  int dim = z.frame.dimension();
  for (auto& [k, zk] : z.components) {
    if (k < 1 || k > dim)
      throw std::invalid_argument("field component index outside the Haar frame");
    int top = zk.max_coord();
    for (int j = k; j <= top; ++j)
      if (zk.degree_in(j) > 0) out.push_back({k, j});
  }
  return out;
}

void require_predictable(const PredictableField& z) {
  auto v = validate_predictable(z);
  if (!v.empty()) throw AnticipatingFieldError(std::move(v));
}

ChaosElement wiener_integral(const PredictableField& z, bool allow_anticipating) {
  if (!allow_anticipating) require_predictable(z);
  ChaosElement r;
  for (auto& [k, zk] : z.components) r = r + zk * ChaosElement::coordinate(k);
  return r;
}

ChaosElement field_norm_sq(const ChaosField& z) {
  ChaosElement r;
  for (auto& [k, zk] : z.components) r = r + zk * zk;
  return r;
}

ChaosElement field_norm_sq(const PredictableField& z) { return field_norm_sq(z.as_field()); }

namespace {

struct TensorPowerWalk {
  const std::vector<std::pair<int, const ChaosElement*>>& comps;
  std::map<std::pair<int, int>, ChaosElement> power_cache;

  const ChaosElement& power(int slot, int e) {
    auto key = std::make_pair(slot, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    return power_cache.emplace(key, comps[slot].second->pow(static_cast<unsigned>(e)))
        .first->second;
  }

  // Enumerates exponent multisets alpha with |alpha| = n over the component
  // coordinates. Derivatives act on f only; the field-power multiplier is
  // carried separately and applied at the leaf.
  void walk(std::size_t slot, int remaining, const ChaosElement& derived,
            const ChaosElement& mult, const Rational& weight, ChaosElement& acc) {
    if (remaining == 0) {
      acc = acc + mult * derived * weight;
      return;
    }
    if (slot == comps.size()) return;
    // weight carries n! / prod(alpha_i!)
    ChaosElement d = derived;
    Rational w = weight;
    for (int e = 0; remaining - e >= 0; ++e) {
      if (e > 0) {
        d = derive_coord(d, comps[slot].first);
        if (d.is_zero()) break;
        w /= e;
      }
      if (e == 0)
        walk(slot + 1, remaining, d, mult, w, acc);
      else
        walk(slot + 1, remaining - e, d, mult * power(static_cast<int>(slot), e), w, acc);
    }
  }
};

}  // namespace

ChaosElement d_tensor(const ChaosElement& f, const ChaosField& z, int n) {
  if (n < 0) throw std::invalid_argument("d_tensor: n must be >= 0");
  if (n == 0) return f;
  if (n > f.total_degree()) return {};
  std::vector<std::pair<int, const ChaosElement*>> comps;
  for (auto& [k, zk] : z.components)
    if (!zk.is_zero()) comps.emplace_back(k, &zk);
  ChaosElement acc;
  TensorPowerWalk tw{comps, {}};
  tw.walk(0, n, f, ChaosElement::constant(1),
          Rational(factorial_int(static_cast<unsigned>(n))), acc);
  return acc;
}

ChaosElement tilde_exp(const ChaosElement& f, const ChaosField& z) {
  ChaosElement sum;
  int deg = f.total_degree();
  Rational inv_fact = 1;
  for (int n = 0; n <= deg; ++n) {
    if (n > 0) inv_fact /= n;
    sum = sum + d_tensor(f, z, n) * inv_fact;
  }
  return sum;
}

ChaosElement hermite_hat(int n, const ChaosElement& x, const ChaosElement& t) {
  if (n < 0) throw std::invalid_argument("hermite_hat: n must be >= 0");
  ChaosElement h0 = ChaosElement::constant(1);
  if (n == 0) return h0;
  ChaosElement h1 = x;
  for (int k = 1; k < n; ++k) {
    ChaosElement h2 = x * h1 - t * h0 * Rational(k);
    h0 = std::move(h1);
    h1 = std::move(h2);
  }
  return h1;
}

ChaosElement l_operator(const ChaosElement& f, const PredictableField& z, int n,
                        bool allow_anticipating) {
  if (n < 0) throw std::invalid_argument("l_operator: n must be >= 0");
  if (!allow_anticipating) require_predictable(z);
  if (n == 0) return f;
  ChaosElement big_i = wiener_integral(z, true);
  ChaosElement big_q = field_norm_sq(z);
  ChaosField field = z.as_field();
  ChaosElement sum;
  for (int k = 1; k <= n; ++k) {
    ChaosElement dk = d_tensor(f, field, k);
    if (dk.is_zero()) continue;
    // -C(n,k) Hhat_{n-k}(I,Q) D_{-Z}^{(x)k} = (-1)^{k+1} C(n,k) Hhat_{n-k} D_Z^{(x)k}
    Rational c = Rational(binomial_int(static_cast<unsigned>(n), static_cast<unsigned>(k)));
    if (k % 2 == 0) c = -c;
    sum = sum + hermite_hat(n - k, big_i, big_q) * dk * c;
  }
  return sum;
}

namespace {

Json field_json_summary(const PredictableField& z) {
  Json j;
  j["level"] = z.frame.level;
  j["components"] = static_cast<int>(z.components.size());
  return j;
}

}  // namespace

VerificationReport verify_ln_duality(const ChaosElement& f, const PredictableField& z,
                                     int n, bool allow_anticipating) {
  auto violations = validate_predictable(z);
  if (!violations.empty() && !allow_anticipating)
    throw AnticipatingFieldError(std::move(violations));
  Rational lhs = expectation(l_operator(f, z, n, allow_anticipating));
  Rational rhs =
      expectation(hermite_hat(n, wiener_integral(z, true), field_norm_sq(z)) * f);
  VerificationReport rep;
  rep.identity = "ln";
  rep.lhs = format_rational(lhs);
  rep.rhs = format_rational(rhs);
  rep.pass = violations.empty() && lhs == rhs;
  rep.params = field_json_summary(z);
  rep.params["n"] = n;
  if (!violations.empty()) rep.extra["context"] = "outside theorem hypotheses";
  return rep;
}

ChaosElement ordered_translate(const ChaosElement& f, const PredictableField& z, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("ordered_translate: sign must be +1 or -1");
  require_predictable(z);
  ChaosElement a = f;
  int dim = z.frame.dimension();
  for (int k = 1; k <= dim; ++k) {
    ChaosElement zk = z.component(k);
    if (zk.is_zero()) continue;
    ChaosElement result = a;
    ChaosElement term = a;
    ChaosElement zpow = ChaosElement::constant(1);
    Rational inv_fact = 1;
    int deg = a.degree_in(k);
    for (int n = 1; n <= deg; ++n) {
      term = derive_coord(term, k);
      if (term.is_zero()) break;
      zpow = zpow * zk;
      inv_fact /= n;
      Rational c = inv_fact;
      if (sign < 0 && n % 2 == 1) c = -c;
      result = result + zpow * term * c;
    }
    a = std::move(result);
  }
  return a;
}

ChaosElement density_truncated(const PredictableField& z, const std::vector<int>& orders) {
  require_predictable(z);
  int dim = z.frame.dimension();
  if (static_cast<int>(orders.size()) != dim)
    throw std::invalid_argument("density_truncated: orders must have one entry per coordinate");
  ChaosElement prod = ChaosElement::constant(1);
  for (int k = 1; k <= dim; ++k) {
    if (orders[k - 1] < 0)
      throw std::invalid_argument("density_truncated: orders must be >= 0");
    ChaosElement zk = z.component(k);
    ChaosElement factor = ChaosElement::constant(1);
    ChaosElement zpow = ChaosElement::constant(1);
    Rational inv_fact = 1;
    for (int n = 1; n <= orders[k - 1]; ++n) {
      if (zk.is_zero()) break;
      zpow = zpow * zk;
      inv_fact /= n;
      factor = factor + zpow * ChaosElement::hermite(n, k) * inv_fact;
    }
    prod = prod * factor;
  }
  return prod;
}

std::vector<int> required_orders(const ChaosElement& f, const PredictableField& z) {
  require_predictable(z);
  int dim = z.frame.dimension();
  std::vector<int> orders(dim, 0);
  ChaosElement a = f;
  for (int k = 1; k <= dim; ++k) {
    // stage-k backward translate
    ChaosElement zk = z.component(k);
    if (!zk.is_zero()) {
      PredictableField one_stage;
      one_stage.frame = z.frame;
      one_stage.components.emplace(k, zk);
      a = ordered_translate(a, one_stage, -1);
    }
    orders[k - 1] = a.degree_in(k);
  }
  return orders;
}

VerificationReport verify_mg(const ChaosElement& f, const PredictableField& z) {
  require_predictable(z);
  int dim = z.frame.dimension();
  Rational target = expectation(f);
  ChaosElement a = f;
  ChaosElement density = ChaosElement::constant(1);
  Json stages = Json::array();
  bool all_ok = true;
  Rational lhs = target;
  for (int k = 1; k <= dim; ++k) {
    ChaosElement zk = z.component(k);
    if (!zk.is_zero()) {
      PredictableField one_stage;
      one_stage.frame = z.frame;
      one_stage.components.emplace(k, zk);
      a = ordered_translate(a, one_stage, -1);
    }
    int order = a.degree_in(k);
    ChaosElement factor = ChaosElement::constant(1);
    ChaosElement zpow = ChaosElement::constant(1);
    Rational inv_fact = 1;
    for (int n = 1; n <= order; ++n) {
      if (zk.is_zero()) break;
      zpow = zpow * zk;
      inv_fact /= n;
      factor = factor + zpow * ChaosElement::hermite(n, k) * inv_fact;
    }
    density = density * factor;
    Rational stage_value = inner_product(a, density);
    bool ok = stage_value == target;
    all_ok = all_ok && ok;
    Json sj;
    sj["k"] = k;
    sj["order"] = order;
    sj["value"] = format_rational(stage_value);
    sj["pass"] = ok;
    stages.push_back(sj);
    if (k == dim) lhs = stage_value;
  }
  VerificationReport rep;
  rep.identity = "mg";
  rep.lhs = format_rational(lhs);
  rep.rhs = format_rational(target);
  rep.pass = all_ok && lhs == target;
  rep.params = field_json_summary(z);
  rep.extra["stages"] = stages;
  return rep;
}

namespace {

MonomialForm monomial_pow(const MonomialForm& p, int e) {
  MonomialForm r;
  r.add(MultiIndex{}, 1);
  for (int t = 0; t < e; ++t) r = r * p;
  return r;
}

MonomialForm monomial_substitute(const MonomialForm& p,
                                 const std::map<int, MonomialForm>& map) {
  MonomialForm out;
  for (auto& [a, c] : p.terms) {
    MonomialForm term;
    term.add(MultiIndex{}, c);
    for (auto& [i, e] : a.entries()) {
      auto it = map.find(i);
      if (it != map.end()) {
        term = term * monomial_pow(it->second, e);
      } else {
        MultiIndex xi;
        xi.set(i, e);
        MonomialForm x;
        x.add(xi, 1);
        term = term * x;
      }
    }
    out = out + term;
  }
  return out;
}

// Exact lambda-degree of E[exp{lambda I - lambda^2 Q / 2} F], computed through
// the monomial algebra: by the exact Girsanov identity this expectation equals
// E[F(X)] with X_k = x_k + lambda z_k(X) built in ascending coordinate order,
// and E[L_n F] = n! [lambda^n] of it. Everything past this degree vanishes,
// so it is the correct (and tight) truncation order for the L_n series.
int lhs_series_order(const ChaosElement& f, const PredictableField& z) {
  int dim = z.frame.dimension();
  int lambda = dim + 1;  // spare slot holding powers of lambda
  std::map<int, MonomialForm> shifted;
  for (int k = 1; k <= dim; ++k) {
    MultiIndex mk;
    mk.set(k, 1);
    MonomialForm xk;
    xk.add(mk, 1);
    ChaosElement zk = z.component(k);
    if (!zk.is_zero()) {
      MultiIndex ml;
      ml.set(lambda, 1);
      MonomialForm lam;
      lam.add(ml, 1);
      xk = xk + lam * monomial_substitute(to_monomial(zk), shifted);
    }
    shifted.emplace(k, std::move(xk));
  }
  MonomialForm ff = monomial_substitute(to_monomial(f), shifted);
  std::map<int, Rational> by_power;
  for (auto& [a, c] : ff.terms) {
    Rational m = c;
    int lampow = 0;
    bool vanishes = false;
    for (auto& [i, e] : a.entries()) {
      if (i == lambda) {
        lampow = e;
        continue;
      }
      if (e % 2 == 1) {
        vanishes = true;
        break;
      }
      BigInt dfact = 1;
      for (int t = e - 1; t >= 1; t -= 2) dfact *= t;
      m *= Rational(dfact);
    }
    if (!vanishes) by_power[lampow] += m;
  }
  int order = 0;
  for (auto& [p, v] : by_power)
    if (v != 0) order = std::max(order, p);
  return order;
}

}  // namespace

VerificationReport verify_density_expansion(const ChaosElement& f, const PredictableField& z) {
  require_predictable(z);
  int deg = lhs_series_order(f, z);
  Rational lhs = 0;
  Rational inv_fact = 1;
  for (int n = 0; n <= deg; ++n) {
    if (n > 0) inv_fact /= n;
    lhs += expectation(l_operator(f, z, n)) * inv_fact;
  }
  ChaosElement g = f - tilde_exp(f, z.as_field().negated());
  // Truncation orders chosen top-down: the factor at coordinate k must cover
  // the degree of g plus whatever the already-fixed higher factors carry in
  // xi_k through their z_j powers.
  int dim = z.frame.dimension();
  std::vector<int> orders(dim, 0);
  for (int k = dim; k >= 1; --k) {
    int need = g.degree_in(k);
    for (int j = k + 1; j <= dim; ++j)
      need += orders[j - 1] * z.component(j).degree_in(k);
    orders[k - 1] = need;
  }
  Rational rhs = expectation(f) + inner_product(density_truncated(z, orders), g);
  VerificationReport rep;
  rep.identity = "density";
  rep.lhs = format_rational(lhs);
  rep.rhs = format_rational(rhs);
  rep.pass = lhs == rhs;
  rep.params = field_json_summary(z);
  rep.params["truncation_degree"] = deg;
  return rep;
}

JacobianMatrix jacobian(const ChaosField& z, int dim) {
  for (auto& [k, zk] : z.components)
    if (k > dim || zk.max_coord() > dim)
      throw std::invalid_argument("jacobian: dim does not cover the active coordinates");
  JacobianMatrix m(dim, std::vector<ChaosElement>(dim));
  for (int j = 1; j <= dim; ++j)
    for (int k = 1; k <= dim; ++k) m[j - 1][k - 1] = derive_coord(z.component(k), j);
  return m;
}

NilpotencyReport nilpotency_check(const ChaosField& z, int dim) {
  JacobianMatrix m = jacobian(z, dim);
  NilpotencyReport rep;
  rep.nilpotent = true;
  JacobianMatrix p = m;
  for (int n = 1; n <= dim; ++n) {
    if (n > 1) {
      JacobianMatrix q(dim, std::vector<ChaosElement>(dim));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          ChaosElement s;
          for (int l = 0; l < dim; ++l) s = s + p[i][l] * m[l][j];
          q[i][j] = std::move(s);
        }
      p = std::move(q);
    }
    ChaosElement tr;
    for (int i = 0; i < dim; ++i) tr = tr + p[i][i];
    if (!tr.is_zero()) rep.nilpotent = false;
    rep.traces.push_back(std::move(tr));
  }
  return rep;
}

}  // namespace wcl
