#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wcl/field.hpp"
#include "wcl/json_io.hpp"

namespace wcl {

/// Deterministic stream for instance generation. All randomness in the
/// artifact flows through one of these, keyed by a user-visible seed.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// uniform in [lo, hi], inclusive
  long long uniform(long long lo, long long hi);
  bool chance(int numer, int denom) { return uniform(1, denom) <= numer; }

 private:
  std::uint64_t state_;
};

ChaosElement random_element(SeededRng& rng, int max_coord, int max_degree, int max_terms,
                            int coeff_bound);
Direction random_direction(SeededRng& rng, int max_coord, int coeff_bound);
/// Components built coordinate-by-coordinate from strictly lower coordinates,
/// so the result always validates as predictable.
PredictableField random_predictable(SeededRng& rng, int level, int comp_degree,
                                    int coeff_bound);
/// A field with at least one nonzero Jacobian trace (retries until the exact
/// engine confirms non-nilpotency).
ChaosField random_non_nilpotent(SeededRng& rng, int dim);

struct InstanceSpec {
  std::string kind;  // cm | adjoint | mg | ln | nilpotency | density
  int degree = 3;
  int coords = 3;   // max coordinate for directions / functionals
  int level = 1;    // Haar level for field kinds
  int coeff_bound = 9;
  std::uint64_t seed = 0;
  bool anticipating = false;
};

/// Deterministic from the spec; emitted instances satisfy the target
/// operation's preconditions unless anticipating probes were requested.
Json gen_instance(const InstanceSpec& spec);

}  // namespace wcl
