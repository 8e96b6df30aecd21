#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/gamma.hpp>

#include "rmt/errors.hpp"
#include "rmt/mc_oracle.hpp"

using namespace rmt;

TEST_CASE("counter RNG is deterministic and keyed") {
  CounterRng a(7), b(7), c(8);
  for (int i = 0; i < 5; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 3) == derive_seed(1, 3));
}

TEST_CASE("draws are sorted, positive and reproducible") {
  SamplerConfig cfg{8, 1, 0.5, 1.0, 99, 10};
  const auto x = sample_eigenvalues(cfg, 3);
  CHECK(x.size() == 8);
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(x.front() > 0);
  CHECK(x == sample_eigenvalues(cfg, 3));
  CHECK(x != sample_eigenvalues(cfg, 4));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate({0, 2, 0.0, 1.0, 0, 10}), DomainError);
  CHECK_THROWS_AS(validate({4, 3, 0.0, 1.0, 0, 10}), DomainError);
  CHECK_THROWS_AS(validate({4, 2, 0.0, -1.0, 0, 10}), DomainError);
  CHECK_THROWS_AS(sampler_for(Weight(1.0, {0, 0, 1}), 2, 4, 0, 10), DomainError);
}

TEST_CASE("one eigenvalue follows a gamma law") {
  // n = 1: density x^a e^{-rate x}
  SamplerConfig cfg{1, 2, 1.5, 2.0, 5, 4000};
  const auto s = sample_extremes(cfg, Extreme::smallest);
  const boost::math::gamma_distribution<double> g(2.5, 0.5);
  CHECK(ks_distance(s, [&](double x) { return boost::math::cdf(g, x); }) < 1.63 / std::sqrt(4000.0));
}

TEST_CASE("mean trace of the Laguerre unitary ensemble") {
  // E sum x_i = n (n + a) for weight x^a e^{-x}
  const int n = 6;
  const double a = 1.0;
  SamplerConfig cfg{n, 2, a, 1.0, 11, 4000};
  double sum = 0, sq = 0;
  for (int k = 0; k < cfg.n_samples; ++k) {
    const auto x = sample_eigenvalues(cfg, k);
    double t = 0;
    for (double v : x) t += v;
    sum += t;
    sq += t * t;
  }
  const double mean = sum / cfg.n_samples;
  const double se = std::sqrt((sq / cfg.n_samples - mean * mean) / cfg.n_samples);
  CHECK(std::abs(mean - n * (n + a)) < 4 * se);
}

TEST_CASE("ensemble mapping") {
  const Weight w(2.0, {0, 3});
  const SamplerConfig c2 = sampler_for(w, 2, 8, 1, 10), c1 = sampler_for(w, 1, 8, 1, 10), c4 = sampler_for(w, 4, 8, 1, 10);
  CHECK(c2.n == 8);
  CHECK(c2.a_param == 2.0);
  CHECK(c2.rate == 3.0);
  CHECK(c1.n == 8);
  CHECK(c1.a_param == 1.0);
  CHECK(c1.rate == 1.5);
  CHECK(c4.n == 4);
  CHECK(c4.a_param == 2.0);
  CHECK(c4.rate == 3.0);
}

TEST_CASE("empirical CDF and density") {
  const EmpiricalCdf e = empirical_cdf({0.1, 0.2, 0.3, 0.4}, {0.25, 1.0});
  CHECK(e.prob[0] == 0.5);
  CHECK(e.prob[1] == 1.0);
  CHECK(e.stderr_[0] == doctest::Approx(0.25));
  SamplerConfig cfg{4, 2, 0.0, 1.0, 3, 500};
  const Histogram h = empirical_density(cfg, 0.0, 40.0, 40);
  double mass = 0;
  for (double d : h.density) mass += d * 1.0;
  CHECK(h.centers.front() == doctest::Approx(0.5));
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-2));
}
