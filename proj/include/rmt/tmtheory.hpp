#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rmt {

// One checked inequality. slack = bound - value for upper bounds.
struct BoundCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool ok = false;
};

struct TmSystem {
  int m = 1;
  double A_m = 0.0;
  std::vector<double> c;  // c[l] for l = 0..m-1 (c[0] unused by Q)
  std::vector<double> d;  // d_0..d_{m-1}
  double gamma_c = 0.0;
  Eigen::MatrixXd X, Y, T;
  Eigen::MatrixXd R, Q, Qhat;
  Eigen::VectorXd v, v0, v1;
};

double binomial(int n, int k);
// c_l for 0 <= l, zero once l > m-1.
double tm_c(int m, int l);

// Oscillatory integrals against 1/h, in the theta variable x = cos^2 theta.
double integral_I(int m, int q);
double integral_Ihat(int m, int q);

TmSystem build_tm(int m);

struct TmInvertibility {
  double det = 0.0;
  double cond = 0.0;
  double det_yx = 0.0;
};
TmInvertibility verify_tm_invertible(const TmSystem& s);

struct NormReport {
  double qhat_norm = 0.0;
  double qhat_norm_closed = 0.0;
  double vq_norm = 0.0;
  double vqv = 0.0;
  std::vector<BoundCheck> checks;
  bool ok() const;
};
NormReport verify_norm_bounds(const TmSystem& s);

// Bounds on I and Ihat for q = 1..q_max.
std::vector<BoundCheck> verify_integral_bounds(int m, int q_max);

double aux_u(int m, double x);
double aux_W(int q, double theta);
double aux_What(int q, double theta);
// u(0), u(1), min u, and the maxima of W_q, What_q over dense grids, q <= q_max.
std::vector<BoundCheck> verify_aux(int m, int q_max);

std::vector<BoundCheck> verify_d_sequence(const TmSystem& s);

double aya_identity(const TmSystem& s);

}  // namespace rmt
