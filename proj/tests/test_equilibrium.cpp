#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"

using namespace rmt;
constexpr double kPi = std::numbers::pi;

namespace {

Weight monomial(int m, double alpha = 1.0, double q = 1.0) {
  std::vector<double> v(m + 1, 0.0);
  v[m] = q;
  return Weight(alpha, v);
}

// (1/2pi) int_0^beta V'(x) sqrt(x/(beta-x)) dx with x = beta sin^2(t)
double mrs_integral_oracle(const Weight& w, double beta) {
  auto f = [&](double t) {
    const double s = std::sin(t);
    return w.V_prime(beta * s * s) * 2.0 * beta * s * s;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 10, 1e-14) / (2 * kPi);
}

}  // namespace

TEST_CASE("MRS number, linear V") {
  for (int n : {1, 10, 64}) CHECK(mrs_number(Weight(1.0, {0, 1}), n) == doctest::Approx(4.0 * n).epsilon(1e-14));
  CHECK(mrs_number(Weight(1.0, {0, 2.5}), 10) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("MRS number solves the defining relation") {
  for (int m : {2, 3})
    for (int n : {8, 33, 128}) {
      const Weight w = monomial(m);
      const double b = mrs_number(w, n);
      CHECK(std::abs(mrs_integral_oracle(w, b) - n) < 1e-10 * n);
      CHECK(std::abs(mrs_defining_integral(w, b) - n) < 1e-10 * n);
    }
  const Weight mixed(1.0, {0, 0.5, 0.2, 1.0});
  const double b = mrs_number(mixed, 40);
  CHECK(std::abs(mrs_integral_oracle(mixed, b) - 40) < 1e-9);
}

TEST_CASE("MRS leading asymptotics") {
  // ((1/2) m q_m A_m)^{-1/m} n^{1/m}, A_2 = 3/8
  const double lead = std::pow(0.5 * 2 * 0.375, -0.5) * std::sqrt(64.0);
  CHECK(mrs_number(monomial(2), 64) == doctest::Approx(lead).epsilon(0.15));
}

TEST_CASE("h_n normalization and positivity") {
  for (int m : {1, 2, 3, 5})
    for (int n : {8, 16, 64}) {
      const EquilibriumData eq = equilibrium(monomial(m, 1.0, 0.7), n);
      CHECK(sqrt_moment_total(eq.h_coeffs) == doctest::Approx(2 * kPi).epsilon(1e-9));
      for (int i = 0; i <= 50; ++i) CHECK(eq.h(i / 50.0) > 0.0);
      auto f = [&](double s) { return std::sqrt((1 - s) / s) * eq.h(s); };
      const double oracle = boost::math::quadrature::tanh_sinh<double>().integrate(f, 0.0, 1.0);
      CHECK(oracle == doctest::Approx(2 * kPi).epsilon(1e-9));
    }
  const EquilibriumData eq1 = equilibrium(Weight(1.0, {0, 1}), 12);
  REQUIRE(eq1.h_coeffs.size() == 1);
  CHECK(eq1.h_coeffs[0] == doctest::Approx(4.0));
}

TEST_CASE("h_n tends to the limiting polynomial") {
  const std::vector<double> h = limiting_h(2);
  CHECK(h[0] == doctest::Approx(8.0 / 3.0));
  CHECK(h[1] == doctest::Approx(16.0 / 3.0));
  const Weight w(1.0, {0, 1, 1});
  double prev = 1e9;
  for (int n : {16, 32, 64}) {
    const EquilibriumData eq = equilibrium(w, n);
    double dev = 0;
    for (int i = 0; i <= 100; ++i) dev = std::max(dev, std::abs(eq.h(i / 100.0) - eval_poly(h, i / 100.0)));
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("density") {
  const EquilibriumData eq = equilibrium(Weight(1.0, {0, 1}), 20);
  for (double x : {0.1, 0.5, 0.9}) CHECK(omega_n(eq, x) == doctest::Approx(2 / kPi * std::sqrt((1 - x) / x)));
  CHECK(omega_n(eq, 1.0) == 0.0);
  const EquilibriumData eq3 = equilibrium(monomial(3), 30);
  const double mass = boost::math::quadrature::tanh_sinh<double>().integrate([&](double x) { return omega_n(eq3, x); },
                                                                            0.0, 1.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(omega_n(eq, 0.0), DomainError);
  CHECK_THROWS_AS(omega_n(eq, 1.2), DomainError);
}

TEST_CASE("edge constants") {
  const EquilibriumData eq = equilibrium(Weight(1.0, {0, 1}), 20);
  CHECK(eq.c_n == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
  CHECK(eq.tilde_c_n == doctest::Approx(4.0));
  const auto [c, ct] = edge_constants(eq);
  CHECK(c == eq.c_n);
  CHECK(ct == eq.tilde_c_n);
  const EquilibriumData e2 = equilibrium(monomial(2), 4096);
  CHECK(e2.c_n == doctest::Approx(std::pow(4.0, 2.0 / 3.0)).epsilon(0.05));
  CHECK(e2.tilde_c_n == doctest::Approx(16.0 / 9.0).epsilon(0.05));
}

TEST_CASE("phase functions") {
  const EquilibriumData eq = equilibrium(Weight(1.5, {0, 0.3, 1}), 24);
  for (double x : {0.05, 0.4, 0.93}) {
    CHECK(phase_F(eq, 1, x) - phase_F(eq, 2, x) == doctest::Approx(std::acos(2 * x - 1)).epsilon(1e-13));
    // against direct quadrature of the integral
    auto f = [&](double s) { return std::sqrt((1 - s) / s) * eq.h(s); };
    const double I = boost::math::quadrature::tanh_sinh<double>().integrate(f, x, 1.0);
    CHECK(phase_integral(eq, x) == doctest::Approx(0.5 * eq.n * I).epsilon(1e-11));
    CHECK(phase_G(eq, x) == doctest::Approx(0.5 * eq.n * I + 0.5 * eq.alpha * std::acos(2 * x - 1) - kPi / 4));
  }
  CHECK(phase_F(eq, 1, 1.0 - 1e-12) == doctest::Approx(-kPi / 4).epsilon(1e-5));
  CHECK_THROWS_AS(phase_F(eq, 1, 1.0), DomainError);
}

TEST_CASE("theta satisfies its first-order relation") {
  for (int m : {1, 2, 3, 4}) {
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(i / 201.0);
    CHECK(check_theta_ode(m, grid) < 1e-8);
  }
}

TEST_CASE("sqrt moments") {
  for (int k : {0, 1, 3})
    for (double x : {0.0, 0.3, 1.0}) {
      CHECK(sqrt_moment_lower(k, x) + sqrt_moment_upper(k, x) == doctest::Approx(sqrt_moment_lower(k, 1.0)));
    }
  CHECK(sqrt_moment_lower(0, 1.0) == doctest::Approx(kPi / 2));
  const std::vector<double> p{1.0, 2.0};
  auto f = [&](double s) { return std::sqrt((s - 1) / s) * eval_poly(p, s); };
  const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.0, 2.5, 10, 1e-14);
  CHECK(sqrt_moment_outer(p, 2.5) == doctest::Approx(ref).epsilon(1e-11));
  CHECK(conformal_phi(1.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-5));
}
