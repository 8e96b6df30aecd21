#pragma once

#include <array>
#include <string>

#include "rmt/equilibrium.hpp"

namespace rmt {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Bessel kernel and companions (alpha >= 0, arguments > 0).
double kernel_bessel(double alpha, double xi, double eta);
double kernel_bessel_ratio(double alpha, double xi, double eta);
double kernel_bessel_diagonal(double alpha, double xi);
// d/d eta K_J(xi, eta)
double kernel_bessel_deta(double alpha, double xi, double eta);
// int_0^xi K_J(s, eta) ds
double kernel_bessel_integral(double alpha, double xi, double eta);

double kernel_airy(double xi, double eta);
double kernel_airy_ratio(double xi, double eta);
double kernel_airy_diagonal(double xi);
double kernel_airy_deta(double xi, double eta);
// int_xi^inf K_Ai(s, eta) ds
double kernel_airy_tail_integral(double xi, double eta);

double kernel_sine(double t);
double kernel_sine_deriv(double t);
// int_0^t K_inf(s) ds
double kernel_sine_integral(double t);

// int_{sqrt eta}^inf (J_{a+1}(s) - (2a/s) J_a(s)) ds
double bessel_tail_combination(double alpha, double eta);

Mat2 kernel_hard_limit(int beta, double alpha, double xi, double eta);
Mat2 kernel_soft_limit(int beta, double xi, double eta);
Mat2 kernel_bulk_limit(int beta, double xi, double eta);

enum class Regime { hard, soft, bulk };
Regime parse_regime(const std::string& s);
std::string regime_name(Regime r);

// Local scale 1/s2 in each regime; points map as x = center + xi * slope.
struct ScalingConstants {
  Regime regime = Regime::hard;
  double nu_sq_inv = 0.0;      // beta_n / (4 c~_n n^2)
  double lambda_sq_inv = 0.0;  // beta_n / (c_n n^{2/3})
  double q_n_sq = 0.0;         // n omega_n(x) / beta_n
  double q_n4_sq = 0.0;
  double x_bulk = 0.0;
  double beta_n = 0.0;

  // Square of the conjugation parameter (nu_n^2, lambda_n^2 or q_{n,beta}^2).
  double scale_sq(int beta) const;
  double map(double xi, int beta) const;
};

ScalingConstants scalings(const EquilibriumData& eq, Regime regime, double x_bulk = 0.5);

// Shape of the error term for each entry (the factor divided out of the
// convergence metric). The soft-edge decay constant is `c`.
Mat2 error_weights(Regime regime, int beta, double alpha, double xi, double eta, double c = 0.25);

}  // namespace rmt
