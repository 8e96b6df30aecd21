#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "rmt/equilibrium.hpp"
#include "rmt/limits.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/weights.hpp"

namespace rmt {

struct WidomOptions {
  double resolution = 1.0;    // panel count multiplier of the function table
  double cauchy_scale = 1.0;  // panel multiplier for int p_j w / y
  double cond_limit = 1e8;
};

// Everything a kernel entry needs at one abscissa.
struct WidomPoint {
  double x = 0.0;
  Eigen::VectorXd phi, dphi, cum, eps;  // phi_0..phi_{n-1}
  Eigen::VectorXd Phi1, Phi2;           // values
  Eigen::VectorXd eps1, eps2;           // eps Phi
  Eigen::VectorXd cum1, cum2;           // int_0^x Phi
  Eigen::VectorXd tail1, tail2;         // eps Phi rewritten through the moreC identity
};

double d_n_constant(const Weight& w, int n, const EquilibriumData& eq);

class WidomSystem {
 public:
  static WidomSystem build(const Weight& w, int n, const RecurrenceTable& t, const EquilibriumData& eq,
                           const WidomOptions& opt = {});

  int n = 0, m = 1;
  double alpha = 0.0;
  double beta_n = 0.0;
  double d_n = 0.0;
  double psi1_scale = 0.0, psi2_scale = 0.0;
  double cauchy_prev = 0.0, cauchy_n = 0.0;  // int p_{n-1} w / y, int p_n w / y
  Eigen::MatrixXd A21, A12, A, B, C, G11, Ghat11, Ghat11_alt;
  Eigen::VectorXd eps1_inf, eps2_inf;
  double b_defect = 0.0;
  double cond_C11 = 0.0, cond_Chat22 = 0.0;

  const FunctionTable& table() const { return *table_; }

  double psi_tilde1(double x) const;
  double psi_tilde1_cd(double x) const;
  double psi_tilde2(double x) const;
  double psi1(double x) const { return psi1_scale * psi_tilde1(x); }
  double psi2(double x) const { return psi2_scale * psi_tilde2(x); }

  WidomPoint point(double x) const;

  double K(const WidomPoint& x, const WidomPoint& y) const;
  double S4(const WidomPoint& x, const WidomPoint& y) const;
  double epsS4(const WidomPoint& x, const WidomPoint& y) const;
  double dS4_dy(const WidomPoint& x, const WidomPoint& y) const;
  double S1(const WidomPoint& x, const WidomPoint& y) const;
  double epsS1(const WidomPoint& x, const WidomPoint& y) const;
  double dS1_dy(const WidomPoint& x, const WidomPoint& y) const;

  double S4(double x, double y) const { return S4(point(x), point(y)); }
  double S1(double x, double y) const { return S1(point(x), point(y)); }
  double epsS4(double x, double y) const { return epsS4(point(x), point(y)); }
  double epsS1(double x, double y) const { return epsS1(point(x), point(y)); }

  // beta = 1: K_{n,1}; beta = 4: K_{n/2,4}
  Mat2 matrix_kernel(int beta, const WidomPoint& x, const WidomPoint& y) const;
  Mat2 matrix_kernel(int beta, double x, double y) const { return matrix_kernel(beta, point(x), point(y)); }

  // max |BAC - [[0,0],[C21,C22]]| / max |C|
  double bac_residual() const;
  double moreC_residual() const;
  double skew_defect(const Eigen::MatrixXd& M) const;

 private:
  std::shared_ptr<const Weight> w_;
  std::shared_ptr<const RecurrenceTable> t_;
  std::shared_ptr<const FunctionTable> table_;
  int col_psi1() const { return n + m - 1; }
  int col_psi2() const { return n + m; }
  int col_Phi1(int i) const { return i < m - 1 ? n - 1 - i : col_psi1(); }
  int col_Phi2(int j) const { return j < m - 1 ? n + j : col_psi2(); }
};

// Entry (1,2) scaled by lambda^{-2}, (2,1) by lambda^2.
Mat2 conjugate(const Mat2& k, double lambda);
// Finite-n matrix kernel in the local variables of a regime, ready to compare with the limit.
Mat2 scaled_matrix_kernel(const WidomSystem& sys, int beta, const ScalingConstants& sc, double xi, double eta);

double sgn(double x);

void to_json(nlohmann::json& j, const WidomSystem& s);

}  // namespace rmt
