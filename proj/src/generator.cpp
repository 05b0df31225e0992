#include "wcl/generator.hpp"

#include "wcl/parser.hpp"

namespace wcl {

std::uint64_t SeededRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long long SeededRng::uniform(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("SeededRng::uniform: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long long>(next() % span);
}

namespace {

Rational random_coeff(SeededRng& rng, int bound) {
  long long num = 0;
  while (num == 0) num = rng.uniform(-bound, bound);
  long long den = rng.chance(1, 4) ? rng.uniform(2, 3) : 1;
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace

ChaosElement random_element(SeededRng& rng, int max_coord, int max_degree, int max_terms,
                            int coeff_bound) {
  ChaosElement f;
  int terms = static_cast<int>(rng.uniform(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    MultiIndex a;
    int budget = static_cast<int>(rng.uniform(0, max_degree));
    while (budget > 0) {
      int coord = static_cast<int>(rng.uniform(1, max_coord));
      int e = static_cast<int>(rng.uniform(1, budget));
      a.set(coord, a.get(coord) + e);
      budget -= e;
    }
    f.add_term(a, random_coeff(rng, coeff_bound));
  }
  if (f.is_zero()) f.add_term(MultiIndex{}, 1);
  return f;
}

Direction random_direction(SeededRng& rng, int max_coord, int coeff_bound) {
  Direction d;
  int entries = static_cast<int>(rng.uniform(1, max_coord));
  for (int t = 0; t < entries; ++t)
    d.set(static_cast<int>(rng.uniform(1, max_coord)), random_coeff(rng, coeff_bound));
  return d;
}

PredictableField random_predictable(SeededRng& rng, int level, int comp_degree,
                                    int coeff_bound) {
  PredictableField z;
  z.frame.level = level;
  int dim = z.frame.dimension();
  for (int k = 1; k <= dim; ++k) {
    if (rng.chance(1, 3)) continue;  // sparse fields keep instances tractable
    ChaosElement zk;
    if (k == 1) {
      zk = ChaosElement::constant(random_coeff(rng, coeff_bound));
    } else {
      zk = random_element(rng, k - 1, comp_degree, 2, coeff_bound);
    }
    if (!zk.is_zero()) z.components.emplace(k, std::move(zk));
  }
  return z;
}

ChaosField random_non_nilpotent(SeededRng& rng, int dim) {
  if (dim < 2) throw std::invalid_argument("random_non_nilpotent: dim must be >= 2");
  for (;;) {
    ChaosField z;
    for (int k = 1; k <= dim; ++k) {
      if (rng.chance(1, 3)) continue;
      // anticipating on purpose: components may involve any coordinate
      z.components.emplace(k, random_element(rng, dim, 2, 2, 4));
    }
    if (z.components.empty()) continue;
    if (!nilpotency_check(z, dim).nilpotent) return z;
  }
}

Json gen_instance(const InstanceSpec& spec) {
  SeededRng rng(spec.seed ^ 0xabcdef0123456789ULL);
  Json j;
  j["kind"] = spec.kind;
  j["seed"] = spec.seed;
  // f, g, theta are emitted in the expression syntax the CLI accepts, so an
  // instance file pipes straight back into `verify`; fields stay JSON.
  if (spec.kind == "cm") {
    j["f"] = format_element(random_element(rng, spec.coords, spec.degree, 4, spec.coeff_bound));
    j["theta"] = format_direction(random_direction(rng, spec.coords, spec.coeff_bound));
  } else if (spec.kind == "adjoint") {
    j["f"] = format_element(random_element(rng, spec.coords, spec.degree, 4, spec.coeff_bound));
    j["g"] = format_element(random_element(rng, spec.coords, spec.degree, 4, spec.coeff_bound));
    j["theta"] = format_direction(random_direction(rng, spec.coords, spec.coeff_bound));
  } else if (spec.kind == "mg" || spec.kind == "density") {
    PredictableField z = random_predictable(rng, spec.level, 2, spec.coeff_bound);
    int dim = z.frame.dimension();
    j["f"] = format_element(random_element(rng, dim, spec.degree, 4, spec.coeff_bound));
    j["z"] = field_to_json(z);
  } else if (spec.kind == "ln") {
    if (spec.anticipating) {
      PredictableField z;
      z.frame.level = spec.level;
      // z_1 depends on xi_1: the canonical anticipating probe
      z.components.emplace(1, ChaosElement::coordinate(1));
      j["f"] = format_element(ChaosElement::coordinate(1).pow(2));
      j["z"] = field_to_json(z);
      j["n"] = 1;
    } else {
      PredictableField z = random_predictable(rng, spec.level, 2, spec.coeff_bound);
      int dim = z.frame.dimension();
      j["f"] = format_element(random_element(rng, dim, spec.degree, 4, spec.coeff_bound));
      j["z"] = field_to_json(z);
      j["n"] = static_cast<int>(rng.uniform(0, 5));
    }
  } else if (spec.kind == "nilpotency") {
    int dim = 1 << spec.level;
    if (spec.anticipating) {
      ChaosField z = random_non_nilpotent(rng, std::max(2, dim));
      Json comps = Json::object();
      for (auto& [k, zk] : z.components) comps[std::to_string(k)] = chaos_to_json(zk);
      j["z"] = Json{{"level", spec.level}, {"components", comps}};
      j["dim"] = std::max(2, dim);
    } else {
      PredictableField z = random_predictable(rng, spec.level, 2, spec.coeff_bound);
      j["z"] = field_to_json(z);
      j["dim"] = dim;
    }
  } else {
    throw std::invalid_argument("unknown instance kind: " + spec.kind);
  }
  return j;
}

}  // namespace wcl
