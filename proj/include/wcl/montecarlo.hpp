#pragma once

#include <cstdint>
#include <vector>

#include "wcl/field.hpp"

namespace wcl {

/// Standard-normal draws xi[n][k] for n < count, 1 <= k <= 2^level.
/// Counter-based: each entry is a pure function of (seed, n, k), so parallel
/// generation is order- and worker-count-independent.
struct SampleBatch {
  int level = 0;
  long long count = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;  // row-major, count x 2^level

  int dimension() const { return 1 << level; }
  double at(long long n, int k) const { return data[n * dimension() + (k - 1)]; }
};

/// Stateless normal draw for sample n, coordinate k.
double counter_gaussian(std::uint64_t seed, long long n, int k, int dimension);

SampleBatch sample_batch(int level, long long count, std::uint64_t seed);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long count = 0;
};

Estimate estimate_expectation(const ChaosElement& f, const SampleBatch& batch);

/// Both CM sides estimated on the same draws with the TRUE exponential
/// density exp{sum theta_k xi_k - |theta|^2/2}. pass at 4 paired-stderr.
/// The exact verdict from verify_cm rides along for triangulation.
VerificationReport mc_verify_cm(const ChaosElement& f, const Direction& theta,
                                const SampleBatch& batch);

/// Girsanov check with the true pathwise density
/// exp{sum z_k(xi) xi_k - (1/2) sum z_k(xi)^2}.
VerificationReport mc_verify_mg(const ChaosElement& f, const PredictableField& z,
                                const SampleBatch& batch);

/// Worker count from WCL_THREADS (never affects results, only wall time).
int worker_count();

}  // namespace wcl
