#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "rmt/special.hpp"

using namespace rmt;
namespace bm = boost::math;

namespace {
double gk(const std::function<double(double)>& f, double a, double b) {
  return bm::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}
}  // namespace

TEST_CASE("Bessel J against an independent implementation") {
  for (double nu : {0.0, 0.5, 1.0, 2.5, 7.0})
    for (double x : {1e-3, 0.3, 1.0, 4.0, 12.0, 35.0, 80.0}) {
      const BesselPair p = special_bessel(nu, x);
      const double ref = bm::cyl_bessel_j(nu, x), refp = bm::cyl_bessel_j_prime(nu, x);
      CHECK(std::abs(p.j - ref) <= 1e-12 * std::max(1.0, std::abs(ref)) + 1e-14);
      CHECK(std::abs(p.jp - refp) <= 1e-11 * std::max(1.0, std::abs(refp)) + 1e-14);
    }
}

TEST_CASE("scaled Bessel forms") {
  for (double nu : {0.5, 2.0})
    for (double z : {0.5, 3.0, 9.0}) {
      CHECK(bessel_j_scaled(nu, z) == doctest::Approx(bm::cyl_bessel_j(nu, z) / std::pow(z / 2, nu)).epsilon(1e-11));
      CHECK(bessel_jp_scaled(nu, z) ==
            doctest::Approx(bm::cyl_bessel_j_prime(nu, z) / std::pow(z / 2, nu - 1)).epsilon(1e-10));
    }
  CHECK(bessel_j_scaled(1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("Bessel integrals against quadrature") {
  for (double mu : {0.0, 1.0, 2.5})
    for (double a : {0.5, 3.0, 20.0}) {
      const double ref = gk([mu](double s) { return bm::cyl_bessel_j(mu, s); }, 0.0, a);
      CHECK(bessel_integral(mu, a) == doctest::Approx(ref).epsilon(1e-10));
    }
  for (double nu : {1.0, 2.0})
    for (double a : {0.5, 6.0}) {
      const double ref = gk([nu](double s) { return bm::cyl_bessel_j(nu, s) / s; }, 0.0, a);
      CHECK(bessel_integral_over_s(nu, a) == doctest::Approx(ref).epsilon(1e-10));
    }
  // int_0^inf J_mu = 1
  CHECK(bessel_integral(1.0, 400.0) == doctest::Approx(1.0).epsilon(3e-2));
}

TEST_CASE("Airy against an independent implementation") {
  for (double x : {-12.0, -5.0, -1.0, 0.0, 0.7, 2.0, 6.0, 10.0}) {
    const AiryPair p = special_airy(x);
    CHECK(std::abs(p.ai - bm::airy_ai(x)) <= 1e-12 * std::max(1e-3, std::abs(bm::airy_ai(x))));
    CHECK(std::abs(p.aip - bm::airy_ai_prime(x)) <= 1e-11 * std::max(1e-3, std::abs(bm::airy_ai_prime(x))));
  }
}

TEST_CASE("Airy tail and head") {
  // int_{-inf}^{inf} Ai = 1, int_0^inf Ai = 1/3
  CHECK(airy_tail(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (double x : {-6.0, -1.5, 0.4, 3.0}) {
    CHECK(airy_tail(x) + airy_head(x) == doctest::Approx(1.0).epsilon(1e-12));
    const double ref = gk([](double s) { return bm::airy_ai(s); }, x, 30.0);
    CHECK(airy_tail(x) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("sine integral") {
  for (double x : {0.1, 1.0, 5.0, 30.0}) {
    const double ref = gk([](double t) { return t == 0 ? 1.0 : std::sin(t) / t; }, 0.0, x);
    CHECK(sine_integral(x) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(sine_integral(-2.0) == doctest::Approx(-sine_integral(2.0)));
  CHECK(sine_integral(1e4) == doctest::Approx(M_PI / 2).epsilon(1e-4));
}
