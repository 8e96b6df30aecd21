#include <doctest.h>

#include <cmath>

#include "rmt/asymptotics.hpp"
#include "rmt/errors.hpp"
#include "rmt/widom.hpp"

using namespace rmt;

TEST_CASE("region layout") {
  const RegionConfig c = RegionConfig::for_n(64);
  CHECK(c.bessel_end == doctest::Approx(1.0 / 64));
  const double d = std::pow(64.0, 1.0 / 12 - 2.0 / 3);
  CHECK(c.airy_lo == doctest::Approx(1 - d));
  CHECK(c.airy_hi == doctest::Approx(1 + d));
  CHECK(c.region_of(c.bessel_end) == Region::bessel);
  CHECK(c.region_of(0.5) == Region::bulk);
  CHECK(c.region_of(c.airy_lo) == Region::bulk);
  CHECK(c.region_of(1.0) == Region::airy);
  CHECK(c.region_of(2.0) == Region::exponential);
  const auto [a, b] = c.interior(Region::bulk);
  CHECK(a > c.bessel_end);
  CHECK(b < c.airy_lo);
  CHECK(c.interior(Region::exponential).first == doctest::Approx(1 + 1.2 * d));
  CHECK(parse_region("airy") == Region::airy);
  CHECK(std::string(region_name(Region::exponential)) == "exponential");
  CHECK_THROWS_AS(parse_region("edge"), DomainError);
}

TEST_CASE("phase functions") {
  const Weight w(1.0, {0, 0, 1});
  const EquilibriumData eq = equilibrium(w, 32);
  CHECK(bessel_argument(eq, 0.0) == doctest::Approx(0.0));
  for (double x : {0.01, 0.2, 0.7}) {
    CHECK(f_tilde(eq, x) < 0);
    CHECK(bessel_argument(eq, x) == doctest::Approx(2 * std::sqrt(-f_tilde(eq, x))).epsilon(1e-12));
  }
  CHECK(std::abs(f_airy(eq, 1.0)) < 1e-12);
  CHECK(f_airy(eq, 0.9) < 0);
  CHECK(f_airy(eq, 1.1) > 0);
  CHECK(f_airy(eq, 1.05) > f_airy(eq, 1.02));
}

TEST_CASE("leading order tracks the exact functions and improves with n") {
  const Weight w(1.0, {0, 1});
  const RecurrenceTable t = compute_recurrence(w, 40);
  for (Region r : {Region::bessel, Region::bulk}) {
    double prev = 1e300;
    for (int n : {16, 32}) {
      const EquilibriumData eq = equilibrium(w, n);
      const WidomSystem sys = WidomSystem::build(w, n, t, eq);
      const LeadingOrderError e = leading_order_error(r, sys, t, w, eq, 60);
      CHECK(e.phi < prev);
      CHECK(e.phi < 0.2);
      prev = e.phi;
    }
  }
}

TEST_CASE("evaluators reject points outside their region") {
  const EquilibriumData eq = equilibrium(Weight(1.0, {0, 1}), 16);
  CHECK_THROWS_AS(phi_hat_leading(Region::bulk, eq, 1.5), DomainError);
  CHECK_THROWS_AS(psi_hat_leading(1, Region::exponential, eq, 0.5), DomainError);
}
