#include <doctest.h>

#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/weights.hpp"

using namespace rmt;

TEST_CASE("weight values") {
  CHECK(eval_weight(Weight(1.0, {0, 1}), 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(eval_weight(Weight(0.5, {0, 1}), 0.0) == 0.0);
  CHECK(eval_weight(Weight(2.0, {0, 0, 0, 0, 1}), 2.0) == doctest::Approx(4.0 * std::exp(-16.0)).epsilon(1e-14));
  CHECK(eval_weight(Weight(0.0, {0, 1}), 0.0) == 1.0);
  CHECK_THROWS_AS(eval_weight(Weight(1.0, {0, 1}), -1e-3), DomainError);
}

TEST_CASE("V and V'") {
  const Weight a(1.0, {0, 2});
  CHECK(eval_V(a, 3.0) == 6.0);
  CHECK(eval_V_prime(a, 3.0) == 2.0);
  const Weight b(1.0, {0, 0, 0, 0, 1});
  CHECK(eval_V(b, 1.0) == 1.0);
  CHECK(eval_V_prime(b, 1.0) == 4.0);
  const Weight c(1.0, {1, 1, 1});
  CHECK(eval_V(c, 2.0) == 7.0);
  CHECK(eval_V_prime(c, 2.0) == 5.0);
}

TEST_CASE("V' matches a centered difference") {
  const Weight w(1.5, {0.3, -0.2, 0.7, 0.25});
  for (double x : {0.1, 0.9, 2.5, 6.0}) {
    const double h = 1e-5 * std::max(1.0, x);
    CHECK(w.V_prime(x) == doctest::Approx((w.V(x + h) - w.V(x - h)) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("ensemble to weight map") {
  CHECK(from_ensemble(1.0, {0, 1}, 2) == Weight(1.0, {0, 1}));
  CHECK(from_ensemble(1.0, {0, 1}, 1) == Weight(2.0, {0, 2}));
  CHECK(from_ensemble(0.5, {0, 0, 1}, 4) == Weight(1.0, {0, 0, 2}));
  CHECK_THROWS_AS(from_ensemble(1.0, {0, 1}, 3), DomainError);
  CHECK_THROWS_AS(from_ensemble(0.0, {0, 1}, 2), DomainError);
}

TEST_CASE("invalid weights are rejected") {
  CHECK_THROWS_AS(Weight(-0.5, {0, 1}), DomainError);
  CHECK_THROWS_AS(Weight(1.0, {1}), DomainError);
  CHECK_THROWS_AS(Weight(1.0, {0, -1}), DomainError);
  CHECK_THROWS_AS(Weight(NAN, {0, 1}), DomainError);
  // trailing zeros do not count toward the degree
  CHECK(Weight(1.0, {0, 1, 0, 0}).m() == 1);
}

TEST_CASE("log weight agrees with the weight") {
  const Weight w(2.5, {0, 0.5, 0.1});
  for (double x : {0.01, 0.5, 3.0, 10.0}) CHECK(std::exp(w.log_weight(x)) == doctest::Approx(w(x)).epsilon(1e-13));
  CHECK(std::isinf(w.log_weight(0.0)));
}

TEST_CASE("json round trip") {
  const Weight w(1.25, {0, 0.5, 0, 2});
  nlohmann::json j;
  to_json(j, w);
  CHECK(weight_from_json(j) == w);
}
