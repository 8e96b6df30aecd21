#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "rmt/weights.hpp"

namespace rmt {

// A_j = prod_{i=1}^j (2i-1)/(2i), A_0 = 1.
double central_binomial_ratio(int j);

struct EquilibriumData {
  int n = 0;
  double alpha = 0.0;
  int m = 1;
  double beta_n = 0.0;
  std::vector<double> h_coeffs;  // ascending
  double c_n = 0.0;
  double tilde_c_n = 0.0;

  double h(double x) const;
};

double mrs_number(const Weight& w, int n);
// (1/2pi) int_0^beta V'(x) sqrt(x/(beta-x)) dx, evaluated by quadrature.
double mrs_defining_integral(const Weight& w, double beta);
std::vector<double> h_polynomial(const Weight& w, int n, double beta_n);
EquilibriumData equilibrium(const Weight& w, int n);

double omega_n(const EquilibriumData& eq, double x);
std::pair<double, double> edge_constants(const EquilibriumData& eq);

// Limiting density polynomial h(x) = sum_k 2 A_{m-1-k}/A_m x^k.
std::vector<double> limiting_h(int m);
double eval_poly(const std::vector<double>& c, double x);

// int_0^x s^k sqrt((1-s)/s) ds and int_x^1 of the same, 0 <= x <= 1.
double sqrt_moment_lower(int k, double x);
double sqrt_moment_upper(int k, double x);
// int_0^1 sqrt((1-s)/s) p(s) ds for a polynomial p.
double sqrt_moment_total(const std::vector<double>& p);
// int_1^x sqrt((s-1)/s) p(s) ds for x >= 1.
double sqrt_moment_outer(const std::vector<double>& p, double x);

// F_{n,j}(x), j in {1,2}, and G_n(x) on (0,1).
double phase_F(const EquilibriumData& eq, int j, double x);
double phase_G(const EquilibriumData& eq, double x);
// (n/2) int_x^1 sqrt((1-s)/s) h_n(s) ds
double phase_integral(const EquilibriumData& eq, double x);

double theta(int mdeg, double x);
double theta_prime(int mdeg, double x);
double check_theta_ode(int mdeg, const std::vector<double>& grid);

// Conformal map of C \ [0,1] to the exterior of the unit disk, for real x > 1.
double conformal_phi(double x);

void to_json(nlohmann::json& j, const EquilibriumData& e);

}  // namespace rmt
