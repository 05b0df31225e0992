#include "wcl/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <numbers>
#include <thread>

namespace wcl {

namespace {

constexpr long long kMaxBatchElements = 1LL << 26;  // ~512 MB of doubles
constexpr long long kChunk = 4096;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t h) {
  // strictly inside (0,1)
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

struct Accum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Deterministic chunked reduction: per-chunk partials are combined in chunk
// order, so the result does not depend on the worker count.
Accum reduce_samples(long long count, int threads,
                     const std::function<double(long long)>& value) {
  long long chunks = (count + kChunk - 1) / kChunk;
  std::vector<Accum> partial(chunks);
  auto run_range = [&](long long c0, long long c1) {
    for (long long c = c0; c < c1; ++c) {
      Accum a;
      long long hi = std::min(count, (c + 1) * kChunk);
      for (long long n = c * kChunk; n < hi; ++n) {
        double v = value(n);
        a.sum += v;
        a.sum_sq += v * v;
      }
      partial[c] = a;
    }
  };
  if (threads <= 1 || chunks <= 1) {
    run_range(0, chunks);
  } else {
    std::vector<std::future<void>> futs;
    long long per = (chunks + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long c0 = t * per, c1 = std::min(chunks, (t + 1) * per);
      if (c0 >= c1) break;
      futs.push_back(std::async(std::launch::async, run_range, c0, c1));
    }
    for (auto& f : futs) f.get();
  }
  Accum total;
  for (auto& a : partial) {
    total.sum += a.sum;
    total.sum_sq += a.sum_sq;
  }
  return total;
}

Estimate to_estimate(const Accum& a, long long count) {
  Estimate e;
  e.count = count;
  e.mean = a.sum / static_cast<double>(count);
  double var = (a.sum_sq - a.sum * a.sum / static_cast<double>(count)) /
               static_cast<double>(count - 1);
  if (var < 0.0) var = 0.0;
  e.stderr_ = std::sqrt(var / static_cast<double>(count));
  return e;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("WCL_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

double counter_gaussian(std::uint64_t seed, long long n, int k, int dimension) {
  std::uint64_t counter =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(dimension) +
      static_cast<std::uint64_t>(k - 1);
  std::uint64_t base = mix64(seed ^ 0x5851f42d4c957f2dULL);
  std::uint64_t h1 = mix64(base ^ (counter * 2));
  std::uint64_t h2 = mix64(base ^ (counter * 2 + 1));
  double u1 = uniform01(h1);
  double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SampleBatch sample_batch(int level, long long count, std::uint64_t seed) {
  if (level < 0) throw std::invalid_argument("sample_batch: level must be >= 0");
  if (count < 2) throw std::invalid_argument("sample_batch: count must be >= 2");
  int dim = 1 << level;
  if (count * dim > kMaxBatchElements)
    throw std::invalid_argument("sample_batch: count * 2^level exceeds the memory budget");
  SampleBatch b;
  b.level = level;
  b.count = count;
  b.seed = seed;
  b.data.resize(static_cast<std::size_t>(count) * dim);
  int threads = worker_count();
  auto fill = [&](long long n0, long long n1) {
    for (long long n = n0; n < n1; ++n)
      for (int k = 1; k <= dim; ++k)
        b.data[n * dim + (k - 1)] = counter_gaussian(seed, n, k, dim);
  };
  if (threads <= 1) {
    fill(0, count);
  } else {
    std::vector<std::future<void>> futs;
    long long per = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long n0 = t * per, n1 = std::min(count, (t + 1) * per);
      if (n0 >= n1) break;
      futs.push_back(std::async(std::launch::async, fill, n0, n1));
    }
    for (auto& f : futs) f.get();
  }
  return b;
}

namespace {

// compiled term list for fast repeated evaluation
struct CompiledElement {
  struct Term {
    double coeff;
    std::vector<std::pair<int, int>> factors;  // (coordinate, hermite order)
  };
  std::vector<Term> terms;

  explicit CompiledElement(const ChaosElement& f) {
    for (auto& [a, c] : f.terms()) {
      Term t;
      t.coeff = to_double(c);
      for (auto& [i, e] : a.entries()) t.factors.emplace_back(i, e);
      terms.push_back(std::move(t));
    }
  }

  double eval(const SampleBatch& b, long long n, const double* shift = nullptr) const {
    double total = 0.0;
    for (auto& t : terms) {
      double v = t.coeff;
      for (auto& [i, e] : t.factors) {
        double x = b.at(n, i);
        if (shift) x += shift[i - 1];
        v *= hermite_value(e, x);
      }
      total += v;
    }
    return total;
  }
};

Json estimate_json(const Estimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["stderr"] = e.stderr_;
  j["count"] = e.count;
  return j;
}

}  // namespace

Estimate estimate_expectation(const ChaosElement& f, const SampleBatch& batch) {
  if (f.max_coord() > batch.dimension())
    throw std::invalid_argument("estimate_expectation: batch dimension too small for F");
  CompiledElement cf(f);
  Accum a = reduce_samples(batch.count, worker_count(),
                           [&](long long n) { return cf.eval(batch, n); });
  return to_estimate(a, batch.count);
}

VerificationReport mc_verify_cm(const ChaosElement& f, const Direction& theta,
                                const SampleBatch& batch) {
  int dim = batch.dimension();
  if (f.max_coord() > dim || (!theta.coords().empty() && theta.coords().rbegin()->first > dim))
    throw std::invalid_argument("mc_verify_cm: batch dimension too small");
  CompiledElement cf(f);
  std::vector<double> shift(dim, 0.0);
  for (auto& [i, v] : theta.coords()) shift[i - 1] = to_double(v);
  double half_norm = 0.5 * to_double(theta.norm_sq());
  auto lhs_val = [&](long long n) { return cf.eval(batch, n, shift.data()); };
  auto rhs_val = [&](long long n) {
    double expo = -half_norm;
    for (auto& [i, v] : theta.coords()) expo += to_double(v) * batch.at(n, i);
    return cf.eval(batch, n) * std::exp(expo);
  };
  int threads = worker_count();
  Accum al = reduce_samples(batch.count, threads, lhs_val);
  Accum ar = reduce_samples(batch.count, threads, rhs_val);
  Accum ad = reduce_samples(batch.count, threads,
                            [&](long long n) { return lhs_val(n) - rhs_val(n); });
  Estimate el = to_estimate(al, batch.count);
  Estimate er = to_estimate(ar, batch.count);
  Estimate ed = to_estimate(ad, batch.count);
  double diff = std::fabs(el.mean - er.mean);
  double sigma = ed.stderr_ > 0.0 ? diff / ed.stderr_ : (diff == 0.0 ? 0.0 : HUGE_VAL);
  VerificationReport rep;
  rep.identity = "mc_cm";
  rep.lhs = std::to_string(el.mean);
  rep.rhs = std::to_string(er.mean);
  rep.pass = sigma <= 4.0;
  rep.params["seed"] = batch.seed;
  rep.params["count"] = batch.count;
  rep.params["level"] = batch.level;
  rep.extra["lhs_estimate"] = estimate_json(el);
  rep.extra["rhs_estimate"] = estimate_json(er);
  rep.extra["sigma_distance"] = sigma;
  rep.extra["exact"] = verify_cm(f, theta).to_json();
  return rep;
}

VerificationReport mc_verify_mg(const ChaosElement& f, const PredictableField& z,
                                const SampleBatch& batch) {
  require_predictable(z);
  int dim = batch.dimension();
  if (f.max_coord() > dim || z.frame.dimension() > dim)
    throw std::invalid_argument("mc_verify_mg: batch dimension too small");
  if (dim > 64) throw std::invalid_argument("mc_verify_mg: level too deep (dimension > 64)");
  CompiledElement cf(f);
  std::vector<CompiledElement> cz;
  std::vector<int> zcoords;
  for (auto& [k, zk] : z.components) {
    zcoords.push_back(k);
    cz.emplace_back(zk);
  }
  auto lhs_val = [&](long long n) {
    double shift[64] = {0.0};
    double expo = 0.0;
    for (std::size_t i = 0; i < zcoords.size(); ++i) {
      double zv = cz[i].eval(batch, n);
      int k = zcoords[i];
      shift[k - 1] = -zv;
      expo += zv * batch.at(n, k) - 0.5 * zv * zv;
    }
    return cf.eval(batch, n, shift) * std::exp(expo);
  };
  auto rhs_val = [&](long long n) { return cf.eval(batch, n); };
  int threads = worker_count();
  Accum al = reduce_samples(batch.count, threads, lhs_val);
  Accum ar = reduce_samples(batch.count, threads, rhs_val);
  Accum ad = reduce_samples(batch.count, threads,
                            [&](long long n) { return lhs_val(n) - rhs_val(n); });
  Estimate el = to_estimate(al, batch.count);
  Estimate er = to_estimate(ar, batch.count);
  Estimate ed = to_estimate(ad, batch.count);
  double diff = std::fabs(el.mean - er.mean);
  double sigma = ed.stderr_ > 0.0 ? diff / ed.stderr_ : (diff == 0.0 ? 0.0 : HUGE_VAL);
  VerificationReport rep;
  rep.identity = "mc_mg";
  rep.lhs = std::to_string(el.mean);
  rep.rhs = std::to_string(er.mean);
  rep.pass = sigma <= 4.0;
  rep.params["seed"] = batch.seed;
  rep.params["count"] = batch.count;
  rep.params["level"] = batch.level;
  rep.extra["lhs_estimate"] = estimate_json(el);
  rep.extra["rhs_estimate"] = estimate_json(er);
  rep.extra["sigma_distance"] = sigma;
  rep.extra["exact"] = verify_mg(f, z).to_json();
  return rep;
}

}  // namespace wcl
