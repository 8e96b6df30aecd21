#include "rmt/weights.hpp"

#include <cmath>
#include <limits>

#include "rmt/errors.hpp"

namespace rmt {

Weight::Weight(double alpha, std::vector<double> v_coeffs) : alpha_(alpha), q_(std::move(v_coeffs)) {
  // alpha = 0 is admitted so the classical e^{-x} checks can run; Widom needs alpha > 0.
  if (!(alpha_ >= 0.0) || !std::isfinite(alpha_)) throw DomainError("Weight: alpha must be >= 0");
  while (!q_.empty() && q_.back() == 0.0) q_.pop_back();
  m_ = static_cast<int>(q_.size()) - 1;
  if (m_ < 1) throw DomainError("Weight: V must have positive degree");
  if (!(q_.back() > 0.0)) throw DomainError("Weight: leading coefficient of V must be positive");
}

double Weight::V(double x) const {
  double s = 0.0;
  for (int j = m_; j >= 0; --j) s = s * x + q_[j];
  return s;
}

double Weight::V_prime(double x) const {
  double s = 0.0;
  for (int j = m_; j >= 1; --j) s = s * x + j * q_[j];
  return s;
}

double Weight::log_weight(double x) const {
  if (x < 0.0) throw_domain("Weight", "x must be >= 0");
  if (x == 0.0) return alpha_ > 0.0 ? -std::numeric_limits<double>::infinity() : -V(0.0);
  return alpha_ * std::log(x) - V(x);
}

double Weight::operator()(double x) const {
  if (x < 0.0) throw_domain("eval_weight", "x must be >= 0");
  if (x == 0.0) return alpha_ > 0.0 ? 0.0 : std::exp(-V(0.0));
  return std::pow(x, alpha_) * std::exp(-V(x));
}

double eval_weight(const Weight& w, double x) { return w(x); }
double eval_V(const Weight& w, double x) { return w.V(x); }
double eval_V_prime(const Weight& w, double x) { return w.V_prime(x); }

Weight from_ensemble(double gamma, const std::vector<double>& Q, int beta) {
  if (!(gamma > 0.0)) throw DomainError("from_ensemble: gamma must be positive");
  switch (beta) {
    case 2:
      return Weight(gamma, Q);
    case 1:
    case 4: {
      std::vector<double> v(Q);
      for (auto& c : v) c *= 2.0;
      return Weight(2.0 * gamma, v);
    }
    default:
      throw DomainError("from_ensemble: beta must be 1, 2 or 4");
  }
}

void to_json(nlohmann::json& j, const Weight& w) {
  j = nlohmann::json{{"alpha", w.alpha()}, {"v_coeffs", w.v_coeffs()}};
}

Weight weight_from_json(const nlohmann::json& j) {
  return Weight(j.at("alpha").get<double>(), j.at("v_coeffs").get<std::vector<double>>());
}

}  // namespace rmt
