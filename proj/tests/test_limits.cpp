#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"
#include "rmt/limits.hpp"
#include "rmt/special.hpp"

using namespace rmt;
namespace bm = boost::math;
constexpr double kPi = std::numbers::pi;

namespace {

double bessel_ratio_oracle(double a, double x, double y) {
  const double sx = std::sqrt(x), sy = std::sqrt(y);
  return (bm::cyl_bessel_j(a, sx) * sy * bm::cyl_bessel_j_prime(a, sy) -
          sx * bm::cyl_bessel_j_prime(a, sx) * bm::cyl_bessel_j(a, sy)) /
         (2 * (x - y));
}

double airy_ratio_oracle(double x, double y) {
  return (bm::airy_ai(x) * bm::airy_ai_prime(y) - bm::airy_ai_prime(x) * bm::airy_ai(y)) / (x - y);
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return bm::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

}  // namespace

TEST_CASE("Bessel special values") {
  for (double x : {1.0, 5.0, 20.0})
    CHECK(bessel_j(0.5, x) == doctest::Approx(std::sqrt(2 / (kPi * x)) * std::sin(x)).epsilon(1e-13));
  for (double a : {0.0, 1.5, 3.0})
    for (double x : {0.2, 2.0, 9.0}) {
      const BesselPair p = special_bessel(a, x);
      CHECK(std::abs(p.jp + bessel_j(a + 1, x) - a / x * p.j) < 1e-10);
    }
  CHECK(bessel_j(2.5, 1e-4) / (std::pow(0.5e-4, 2.5) / std::tgamma(3.5)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Airy special values and ODE") {
  CHECK(airy_ai(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-14));
  CHECK(special_airy(0.0).aip == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-14));
  // Ai(0) from the integral representation (1/pi) int_0^inf cos(t^3/3) dt is oscillatory; use
  // Ai(x) = (1/pi) int_0^inf cos(t^3/3 + x t) dt only at x > 0 where it is damped enough
  for (double x : {-3.0, 0.5, 2.0}) {
    const double h = 1e-3;
    const double d2 = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
    CHECK(std::abs(d2 - x * airy_ai(x)) < 1e-6);
  }
  CHECK(airy_head(30.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Bessel kernel") {
  for (double a : {0.0, 1.0, 2.5})
    for (double x : {0.5, 3.0, 12.0})
      for (double y : {0.7, 5.0}) {
        CHECK(kernel_bessel(a, x, y) == doctest::Approx(kernel_bessel(a, y, x)).epsilon(1e-15));
        CHECK(kernel_bessel(a, x, y) == doctest::Approx(bessel_ratio_oracle(a, x, y)).epsilon(1e-10));
      }
  for (double a : {0.0, 2.0})
    for (double x : {0.5, 4.0}) {
      const double sx = std::sqrt(x);
      const double diag = 0.25 * (std::pow(bm::cyl_bessel_j(a, sx), 2) -
                                  bm::cyl_bessel_j(a + 1, sx) * (a == 0 ? -bm::cyl_bessel_j(1, sx) : bm::cyl_bessel_j(a - 1, sx)));
      CHECK(kernel_bessel(a, x, x) == doctest::Approx(diag).epsilon(1e-12));
      for (double d : {1e-7, 1e-6, 1e-5, 1e-4})
        CHECK(kernel_bessel(a, x, x + d) == doctest::Approx(kernel_bessel_diagonal(a, x)).epsilon(1e-4 + 2 * d));
    }
  // (xi eta)^{-alpha/2} K bounded near zero
  const double a = 2.0;
  double prev = 0;
  for (double s : {1e-2, 1e-4, 1e-6}) {
    const double v = kernel_bessel(a, s, 2 * s) / std::pow(2 * s * s, a / 2);
    if (prev > 0) CHECK(v == doctest::Approx(prev).epsilon(0.05));
    prev = v;
  }
}

TEST_CASE("Airy and sine kernels") {
  for (double x : {-3.0, 0.0, 1.5})
    for (double y : {-1.0, 2.0}) CHECK(kernel_airy(x, y) == doctest::Approx(airy_ratio_oracle(x, y)).epsilon(1e-10));
  for (double x : {-2.0, 0.0, 1.0}) {
    const double ap = bm::airy_ai_prime(x), ai = bm::airy_ai(x);
    CHECK(kernel_airy(x, x) == doctest::Approx(ap * ap - x * ai * ai).epsilon(1e-12));
    for (double d : {1e-7, 1e-5, 1e-4}) CHECK(kernel_airy(x, x + d) == doctest::Approx(kernel_airy(x, x)).epsilon(1e-3));
  }
  CHECK(kernel_sine(0.0) == 1.0);
  for (int k : {1, 2, -3}) CHECK(std::abs(kernel_sine(k)) < 1e-15);
  for (double t : {0.3, 1.7}) {
    const double h = 1e-5;
    CHECK(kernel_sine_deriv(t) == doctest::Approx((kernel_sine(t + h) - kernel_sine(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(kernel_sine_integral(t) == doctest::Approx(gk([](double s) { return kernel_sine(s); }, 0.0, t)).epsilon(1e-12));
  }
}

TEST_CASE("kernel tail integrals") {
  for (double x : {-2.0, 0.5})
    for (double y : {-1.0, 1.0}) {
      const double ref = gk([y](double s) { return airy_ratio_oracle(s, y) * (std::abs(s - y) > 1e-9); }, x, 25.0);
      CHECK(kernel_airy_tail_integral(x, y) == doctest::Approx(ref).epsilon(1e-8));
    }
  // int_0^inf J_{alpha+1} = 1 and int_0^inf (alpha/s) J_alpha = 1
  for (double a : {1.0, 2.5}) {
    CHECK(bessel_integral(a + 1, 2000.0) == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(a * bessel_integral_over_s(a, 2000.0) == doctest::Approx(1.0).epsilon(2e-2));
  }
}

TEST_CASE("matrix limit kernels: transposition identities") {
  for (int beta : {1, 4})
    for (double x : {0.5, 2.0, 6.0})
      for (double y : {1.0, 3.0}) {
        const Mat2 a = kernel_hard_limit(beta, 1.5, x, y), b = kernel_hard_limit(beta, 1.5, y, x);
        CHECK(a[0][0] == doctest::Approx(b[1][1]).epsilon(1e-12));
        const Mat2 s = kernel_soft_limit(beta, x - 3, y - 3), t = kernel_soft_limit(beta, y - 3, x - 3);
        CHECK(s[0][0] == doctest::Approx(t[1][1]).epsilon(1e-12));
        const Mat2 u = kernel_bulk_limit(beta, x, y), v = kernel_bulk_limit(beta, y, x);
        CHECK(u[0][0] == doctest::Approx(v[1][1]).epsilon(1e-12));
      }
  CHECK(kernel_bulk_limit(4, 0.7, 0.7)[0][0] == doctest::Approx(1.0));
  CHECK(kernel_bulk_limit(1, 0.7, 0.7)[0][0] == doctest::Approx(1.0));
  const Mat2 s0 = kernel_soft_limit(4, 0.0, 0.0);
  CHECK(s0[0][1] == doctest::Approx(0.5 * (-kernel_airy_deta(0.0, 0.0) - 0.5 * std::pow(airy_ai(0.0), 2))));
}

TEST_CASE("beta = 1 (2,1) entries: jump and antisymmetry") {
  // the only discontinuity is -sgn/2, and the smooth remainder is odd in (x, y)
  for (auto k : {+[](double x, double y) { return kernel_soft_limit(1, x, y); },
                 +[](double x, double y) { return kernel_bulk_limit(1, x, y); },
                 +[](double x, double y) { return kernel_hard_limit(1, 2.0, x, y); }}) {
    for (double x : {0.6, 1.4, 2.2}) {
      const double e = 1e-9;
      CHECK(k(x + e, x)[1][0] - k(x - e, x)[1][0] == doctest::Approx(-1.0).epsilon(1e-6));
      CHECK(k(x, x)[1][0] == doctest::Approx(0.0).epsilon(1e-9));
      for (double y : {0.9, 1.8}) CHECK(k(x, y)[1][0] == doctest::Approx(-k(y, x)[1][0]).epsilon(1e-9));
    }
  }
}

TEST_CASE("limit kernels are continuous off the jump") {
  for (int beta : {1, 4})
    for (double x : {0.8, 3.0}) {
      const double y = 1.9, d = 1e-6;
      const Mat2 a = kernel_hard_limit(beta, 1.0, x, y), b = kernel_hard_limit(beta, 1.0, x + d, y);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(a[i][j] - b[i][j]) < 1e-4);
    }
}

TEST_CASE("scalings") {
  const EquilibriumData eq = equilibrium(Weight(1.0, {0, 1}), 10);
  CHECK(scalings(eq, Regime::hard).map(1.0, 2) == doctest::Approx(1.0 / 40.0).epsilon(1e-14));
  CHECK(scalings(eq, Regime::soft).map(0.0, 2) == eq.beta_n);
  const ScalingConstants b = scalings(eq, Regime::bulk, 0.4);
  CHECK(b.q_n4_sq == doctest::Approx(0.5 * b.q_n_sq));
  CHECK(b.map(0.0, 2) == doctest::Approx(0.4 * eq.beta_n));
  CHECK_THROWS_AS(scalings(eq, Regime::bulk, 1.0), DomainError);
  CHECK(parse_regime("soft") == Regime::soft);
  CHECK(regime_name(Regime::bulk) == "bulk");
  CHECK_THROWS_AS(parse_regime("edge"), DomainError);
}
