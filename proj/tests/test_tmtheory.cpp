#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmt/equilibrium.hpp"
#include "rmt/tmtheory.hpp"

using namespace rmt;
constexpr double kPi = std::numbers::pi;

namespace {
bool all_ok(const std::vector<BoundCheck>& v) {
  for (const auto& b : v)
    if (!b.ok) {
      MESSAGE(b.name << ": value " << b.value << " bound " << b.bound);
      return false;
    }
  return true;
}
}  // namespace

TEST_CASE("small cases") {
  const TmSystem s1 = build_tm(1);
  CHECK(s1.X(0, 0) == 0.0);
  CHECK(s1.T(0, 0) == 1.0);
  CHECK(verify_tm_invertible(s1).det == doctest::Approx(1.0));
  CHECK(aya_identity(s1) == doctest::Approx(0.5).epsilon(1e-14));

  const TmSystem s2 = build_tm(2);
  CHECK(s2.c[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s2.gamma_c == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(s2.d[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(s2.d[0] == doctest::Approx(std::sqrt(kPi) / 2 * 2.0 / std::tgamma(2.5) - 2.0 / 3.0).epsilon(1e-13));
  CHECK(aya_identity(s2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(build_tm(1).A_m == doctest::Approx(0.5));
  CHECK(s2.A_m == doctest::Approx(0.375));
  CHECK(build_tm(3).A_m == doctest::Approx(5.0 / 16.0));
}

TEST_CASE("X and Y are symmetric; T and I - YX invertible") {
  for (int m : {2, 3, 8, 20, 32}) {
    const TmSystem s = build_tm(m);
    CHECK((s.X - s.X.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.Y - s.Y.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const TmInvertibility inv = verify_tm_invertible(s);
    CHECK(std::abs(inv.det) > 1e-8);
    CHECK(inv.det_yx == doctest::Approx(inv.det).epsilon(1e-10));
  }
}

TEST_CASE("d sequence") {
  for (int m : {2, 5, 16, 40}) {
    const TmSystem s = build_tm(m);
    double sum = 0;
    for (double d : s.d) sum += d;
    CHECK(sum == doctest::Approx(0.5 * m * s.c[1]).epsilon(1e-12));
    CHECK(s.d[0] <= std::sqrt(m * kPi) / 2);
    CHECK(s.d[0] >= std::sqrt(m * kPi) / 2 - 1);
    CHECK(all_ok(verify_d_sequence(s)));
  }
}

TEST_CASE("integral bounds over a reduced range") {
  for (int m : {2, 7, 16}) CHECK(all_ok(verify_integral_bounds(m, 60)));
  // Ihat(q) decays for q >= m
  CHECK(std::abs(integral_Ihat(3, 40)) < 2.18 / 6);
}

TEST_CASE("norm identity and bounds") {
  for (int m : {2, 3, 10, 33, 64}) {
    const NormReport r = verify_norm_bounds(build_tm(m));
    CHECK(r.qhat_norm == doctest::Approx(r.qhat_norm_closed).epsilon(1e-12));
    CHECK(r.ok());
  }
}

TEST_CASE("auxiliary functions") {
  for (int m : {2, 9, 16}) {
    CHECK(std::abs(aux_u(m, 0.0)) < 1e-12);
    CHECK(aux_u(m, 1.0) == doctest::Approx(1.0 / (2 * m)).epsilon(1e-12));
  }
  for (double t : {0.1, 0.8, kPi / 2}) CHECK(aux_W(1, t) == doctest::Approx(4 * t / kPi).epsilon(1e-13));
  CHECK(all_ok(verify_aux(4, 50)));
}

TEST_CASE("aYa^T = m/2") {
  for (int m = 1; m <= 50; ++m) CHECK(std::abs(aya_identity(build_tm(m)) - 0.5 * m) < 1e-12 * std::max(1.0, 0.5 * m));
}

// 4m/(2m-1) 2F1(1, 1-m; 3/2-m; x), a terminating series
double h_hypergeometric(int m, double x) {
  double term = 1, sum = 1;
  for (int k = 0; k < m - 1; ++k) {
    term *= (1.0 - m + k) / (1.5 - m + k) * x;
    sum += term;
  }
  return 4.0 * m / (2 * m - 1) * sum;
}

TEST_CASE("limiting h against the hypergeometric form") {
  for (int m : {1, 2, 5, 16}) {
    const std::vector<double> h = limiting_h(m);
    for (double x : {0.0, 0.3, 0.77, 1.0}) {
      const double hyp = h_hypergeometric(m, x);
      CHECK(eval_poly(h, x) == doctest::Approx(hyp).epsilon(1e-12));
    }
  }
}
