#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rmt/weights.hpp"

namespace rmt {

// Eigenvalue density proportional to |Delta(x)|^beta prod x_i^a_param e^{-rate x_i}.
struct SamplerConfig {
  int n = 1;
  int beta = 2;
  double a_param = 0.0;
  double rate = 1.0;
  std::uint64_t seed = 0;
  int n_samples = 1000;
};

// splitmix64 over (key, counter); stateless apart from the counter.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

void validate(const SamplerConfig& cfg);

// Ensemble whose kernel is built from w = x^alpha e^{-v1 x} at even n (any n for beta = 2):
// beta = 2: n eigenvalues, weight w; beta = 1: n eigenvalues, weight w^{1/2};
// beta = 4: n/2 eigenvalues, weight w.
SamplerConfig sampler_for(const Weight& w, int beta, int n, std::uint64_t seed, int n_samples);

// One draw, ascending. Draw k of a run uses derive_seed(cfg.seed, k).
std::vector<double> sample_eigenvalues(const SamplerConfig& cfg, std::uint64_t draw = 0);

enum class Extreme { smallest, largest };

// One extreme per draw, draws 0..n_samples-1.
std::vector<double> sample_extremes(const SamplerConfig& cfg, Extreme which);

struct EmpiricalCdf {
  std::vector<double> thresholds;
  std::vector<double> prob;
  std::vector<double> stderr_;
  int n_samples = 0;
};

EmpiricalCdf empirical_extreme_cdf(const SamplerConfig& cfg, Extreme which, const std::vector<double>& thresholds);
EmpiricalCdf empirical_cdf(const std::vector<double>& samples, const std::vector<double>& thresholds);

// One-point density of a single eigenvalue, binned on [lo, hi). Mass outside the window is
// dropped, not renormalized.
struct Histogram {
  std::vector<double> centers;
  std::vector<double> density;
};
Histogram empirical_density(const SamplerConfig& cfg, double lo, double hi, int bins);

// sup |F_emp - F| over the samples.
template <class F>
double ks_distance(std::vector<double> samples, F&& cdf);

}  // namespace rmt

#include <algorithm>
#include <cmath>

namespace rmt {

template <class F>
double ks_distance(std::vector<double> samples, F&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double N = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs((i + 1) / N - f), std::abs(f - i / N)});
  }
  return d;
}

}  // namespace rmt
