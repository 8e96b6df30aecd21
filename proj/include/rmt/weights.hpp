#pragma once

#include <vector>

#include <nlohmann/json.hpp>

namespace rmt {

// Weight x^alpha exp(-V(x)) on [0, inf), V(x) = sum_j q_j x^j.
class Weight {
 public:
  Weight(double alpha, std::vector<double> v_coeffs);

  double alpha() const { return alpha_; }
  const std::vector<double>& v_coeffs() const { return q_; }
  int m() const { return m_; }

  double V(double x) const;
  double V_prime(double x) const;
  // x^alpha e^{-V(x)}
  double operator()(double x) const;
  // log of the weight, -inf at x = 0 when alpha > 0
  double log_weight(double x) const;

  bool operator==(const Weight& o) const { return alpha_ == o.alpha_ && q_ == o.q_; }

 private:
  double alpha_;
  std::vector<double> q_;
  int m_;
};

double eval_weight(const Weight& w, double x);
double eval_V(const Weight& w, double x);
double eval_V_prime(const Weight& w, double x);

// Ensemble weight x^gamma e^{-Q} mapped to the orthogonality weight for beta in {1,2,4}.
Weight from_ensemble(double gamma, const std::vector<double>& Q, int beta);

void to_json(nlohmann::json& j, const Weight& w);
Weight weight_from_json(const nlohmann::json& j);

}  // namespace rmt
