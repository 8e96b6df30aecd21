#include "rmt/mc_oracle.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <boost/random/gamma_distribution.hpp>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// chi with k degrees of freedom, k > 0 real
double chi(CounterRng& rng, double k) {
  boost::random::gamma_distribution<double> g(0.5 * k, 1.0);
  return std::sqrt(2.0 * g(rng));
}

}  // namespace

CounterRng::result_type CounterRng::operator()() { return splitmix64(key_ ^ splitmix64(counter_++)); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void validate(const SamplerConfig& cfg) {
  if (cfg.n < 1) throw DomainError("sampler: n must be >= 1");
  if (cfg.beta != 1 && cfg.beta != 2 && cfg.beta != 4) throw DomainError("sampler: beta must be 1, 2 or 4");
  if (!(cfg.a_param > -1.0)) throw DomainError("sampler: a_param must exceed -1");
  if (!(cfg.rate > 0.0)) throw DomainError("sampler: rate must be positive");
  if (cfg.n_samples < 1) throw DomainError("sampler: n_samples must be >= 1");
}

std::vector<double> sample_eigenvalues(const SamplerConfig& cfg, std::uint64_t draw) {
  validate(cfg);
  CounterRng rng(derive_seed(cfg.seed, draw));
  const int n = cfg.n;
  const double beta = cfg.beta;
  const double a = cfg.a_param + 1.0 + 0.5 * beta * (n - 1);
  // lower bidiagonal B, eigenvalues of B B^T
  std::vector<double> d(n), s(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) d[i] = chi(rng, 2.0 * a - beta * i);
  for (int i = 0; i + 1 < n; ++i) s[i] = chi(rng, beta * (n - 1 - i));
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) diag[i] = d[i] * d[i] + (i > 0 ? s[i - 1] * s[i - 1] : 0.0);
  for (int i = 0; i + 1 < n; ++i) sub[i] = s[i] * d[i];
  std::vector<double> ev(n);
  if (n == 1) {
    ev[0] = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SingularityError("sampler: tridiagonal eigensolver failed");
    for (int i = 0; i < n; ++i) ev[i] = es.eigenvalues()[i];
  }
  // B B^T carries e^{-x/2}
  for (double& x : ev) x = std::max(0.5 * x / cfg.rate, 0.0);
  std::sort(ev.begin(), ev.end());
  return ev;
}

SamplerConfig sampler_for(const Weight& w, int beta, int n, std::uint64_t seed, int n_samples) {
  const std::vector<double>& v = w.v_coeffs();
  if (w.m() != 1 || v[0] != 0.0) throw DomainError("sampler: only V = q x is sampled exactly");
  SamplerConfig c;
  c.beta = beta;
  c.seed = seed;
  c.n_samples = n_samples;
  c.n = n;
  c.a_param = w.alpha();
  c.rate = v[1];
  if (beta == 1) {
    c.a_param *= 0.5;
    c.rate *= 0.5;
  } else if (beta == 4) {
    if (n % 2 != 0) throw DomainError("sampler: beta = 4 needs even n");
    c.n = n / 2;
  }
  validate(c);
  return c;
}

std::vector<double> sample_extremes(const SamplerConfig& cfg, Extreme which) {
  validate(cfg);
  std::vector<double> out(cfg.n_samples);
  for (int k = 0; k < cfg.n_samples; ++k) {
    const std::vector<double> ev = sample_eigenvalues(cfg, k);
    out[k] = which == Extreme::smallest ? ev.front() : ev.back();
  }
  return out;
}

EmpiricalCdf empirical_cdf(const std::vector<double>& samples, const std::vector<double>& thresholds) {
  EmpiricalCdf r;
  r.thresholds = thresholds;
  r.n_samples = static_cast<int>(samples.size());
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const double N = static_cast<double>(sorted.size());
  for (double t : thresholds) {
    const double p = (std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin()) / N;
    r.prob.push_back(p);
    r.stderr_.push_back(std::sqrt(p * (1.0 - p) / N));
  }
  return r;
}

EmpiricalCdf empirical_extreme_cdf(const SamplerConfig& cfg, Extreme which, const std::vector<double>& thresholds) {
  return empirical_cdf(sample_extremes(cfg, which), thresholds);
}

Histogram empirical_density(const SamplerConfig& cfg, double lo, double hi, int bins) {
  validate(cfg);
  if (!(hi > lo) || bins < 1) throw DomainError("empirical_density: need lo < hi and bins >= 1");
  std::vector<double> counts(bins, 0.0);
  const double h = (hi - lo) / bins;
  for (int k = 0; k < cfg.n_samples; ++k)
    for (double x : sample_eigenvalues(cfg, k)) {
      if (x < lo || x >= hi) continue;
      counts[std::min(bins - 1, static_cast<int>((x - lo) / h))] += 1.0;
    }
  Histogram r;
  const double total = static_cast<double>(cfg.n_samples) * cfg.n;
  for (int b = 0; b < bins; ++b) {
    r.centers.push_back(lo + (b + 0.5) * h);
    r.density.push_back(counts[b] / (total * h));
  }
  return r;
}

}  // namespace rmt
