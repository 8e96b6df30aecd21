#include "rmt/widom.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

double max_abs(const Eigen::MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

double condition(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
}

}  // namespace

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double d_n_constant(const Weight& w, int n, const EquilibriumData& eq) {
  const double a = w.alpha();
  if (!(a > 0.0)) throw_domain("d_n_constant", "alpha must be positive");
  const double lg = std::lgamma(a) + 0.5 * a * std::log(eq.beta_n) - 0.5 * a * std::log(eq.tilde_c_n) -
                    a * std::log(double(n)) - 0.5 * w.V(0.0);
  if (!std::isfinite(lg) || lg > 700.0) throw DomainError("d_n_constant: Gamma overflow");
  return -std::exp(lg);
}

WidomSystem WidomSystem::build(const Weight& w, int n, const RecurrenceTable& t, const EquilibriumData& eq,
                               const WidomOptions& opt) {
  const int m = w.m();
  if (n % 2 != 0) throw_domain("WidomSystem::build", "n must be even");
  if (n < m + 2 || n + m > t.n_max) throw_domain("WidomSystem::build", "need m+2 <= n <= n_max-m");
  if (eq.n != n) throw_domain("WidomSystem::build", "equilibrium data built for another n");

  WidomSystem s;
  s.n = n;
  s.m = m;
  s.alpha = w.alpha();
  s.beta_n = eq.beta_n;
  s.w_ = std::make_shared<const Weight>(w);
  s.t_ = std::make_shared<const RecurrenceTable>(t);
  s.d_n = d_n_constant(w, n, eq);
  const double root = std::sqrt(eq.beta_n / n);
  s.psi1_scale = s.alpha * s.d_n * root;
  s.psi2_scale = root / s.d_n;
  s.cauchy_prev = cauchy_at_zero(t, w, n - 1, opt.cauchy_scale);
  s.cauchy_n = cauchy_at_zero(t, w, n, opt.cauchy_scale);

  const int kmax = n + m - 2;
  auto tp = s.t_;
  auto wp = s.w_;
  const double p1 = s.psi1_scale, p2 = s.psi2_scale, bn1 = t.b[n - 1], I0 = s.cauchy_prev, I1 = s.cauchy_n;
  auto eval = [tp, wp, n, kmax, p1, p2, bn1, I0, I1](double x, std::span<double> out) {
    // phi_n is needed even when m = 1, where the table stops at phi_{n-1}
    thread_local std::vector<double> phi;
    phi.resize(kmax + 2);
    eval_phi_all(*tp, *wp, kmax + 1, x, phi);
    std::copy(phi.begin(), phi.begin() + kmax + 1, out.begin());
    double t1 = 0.0;
    for (int k = 0; k < n; ++k) t1 += tp->p_at_zero[k] * phi[k];
    out[kmax + 1] = p1 * t1;
    out[kmax + 2] = p2 * bn1 * (I0 * phi[n] - I1 * phi[n - 1]) / x;
  };
  const PanelGrid grid = default_grid(w, n + m, opt.resolution);
  s.table_ = std::make_shared<const FunctionTable>(grid, kmax + 3, eval);
  const FunctionTable& tab = *s.table_;

  s.A21 = Eigen::MatrixXd::Zero(m, m);
  auto vp = [wp](double x) { return wp->V_prime(x); };
  for (int i = 0; i + 1 < m; ++i)
    for (int j = 0; j + 1 < m; ++j) s.A21(i, j) = -0.5 * tab.inner_weighted(n - 1 - j, n + i, vp);
  s.A21(m - 1, m - 1) = -0.5 * n / eq.beta_n;
  s.A12 = s.A21.transpose();
  s.A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  s.A.topRightCorner(m, m) = s.A12;
  s.A.bottomLeftCorner(m, m) = s.A21;

  std::vector<int> cols(2 * m);
  for (int i = 0; i < m; ++i) {
    cols[i] = s.col_Phi1(i);
    cols[m + i] = s.col_Phi2(i);
  }
  Eigen::MatrixXd B(2 * m, 2 * m);
  for (int i = 0; i < 2 * m; ++i)
    for (int j = 0; j < 2 * m; ++j) B(i, j) = tab.eps_inner(cols[i], cols[j]);
  // B is O(beta_n/n); for classical weights with m = 1 it vanishes, so scale by that size
  s.b_defect = max_abs(B + B.transpose()) / std::max(max_abs(B), eq.beta_n / n);
  if (s.b_defect > 1e-5) throw ValidationError("WidomSystem::build: B asymmetry " + std::to_string(s.b_defect));
  s.B = 0.5 * (B - B.transpose());

  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  E.topLeftCorner(m, m).setIdentity();
  s.C = E + s.B * s.A;
  const Eigen::MatrixXd C11 = s.C.topLeftCorner(m, m), C12 = s.C.topRightCorner(m, m);
  const Eigen::MatrixXd C21 = s.C.bottomLeftCorner(m, m), C22 = s.C.bottomRightCorner(m, m);
  const Eigen::MatrixXd Chat22 = Eigen::MatrixXd::Identity(m, m) - C22;
  s.cond_C11 = condition(C11);
  s.cond_Chat22 = condition(Chat22);
  if (s.cond_C11 > opt.cond_limit || s.cond_Chat22 > opt.cond_limit)
    throw SingularityError("WidomSystem::build: C11 or I-C22 ill-conditioned");
  s.G11 = s.A21 * C11.partialPivLu().solve(C12);
  s.Ghat11 = -s.A12 * Chat22.partialPivLu().solve(C21);
  const Eigen::MatrixXd B22 = s.B.bottomRightCorner(m, m);
  s.Ghat11_alt = -s.A12 * B22 * Chat22.transpose().partialPivLu().solve(s.A21);

  s.eps1_inf.resize(m);
  s.eps2_inf.resize(m);
  for (int i = 0; i < m; ++i) {
    s.eps1_inf(i) = 0.5 * tab.totals()[cols[i]];
    s.eps2_inf(i) = 0.5 * tab.totals()[cols[m + i]];
  }
  return s;
}

double WidomSystem::psi_tilde1(double x) const {
  std::vector<double> phi(n);
  eval_phi_all(*t_, *w_, n - 1, x, phi);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += t_->p_at_zero[k] * phi[k];
  return s;
}

double WidomSystem::psi_tilde1_cd(double x) const {
  if (!(x > 0.0)) throw_domain("psi_tilde1_cd", "x must be positive");
  std::vector<double> phi(n + 1);
  eval_phi_all(*t_, *w_, n, x, phi);
  return t_->b[n - 1] * (t_->p_at_zero[n - 1] * phi[n] - t_->p_at_zero[n] * phi[n - 1]) / x;
}

double WidomSystem::psi_tilde2(double x) const {
  if (!(x > 0.0)) throw_domain("psi_tilde2", "x must be positive");
  std::vector<double> phi(n + 1);
  eval_phi_all(*t_, *w_, n, x, phi);
  return t_->b[n - 1] * (cauchy_prev * phi[n] - cauchy_n * phi[n - 1]) / x;
}

WidomPoint WidomSystem::point(double x) const {
  if (!(x > 0.0)) throw_domain("WidomSystem::point", "x must be positive");
  WidomPoint p;
  p.x = x;
  const int nf = n + m + 1;
  std::vector<double> vals(nf), dv(nf);
  table_->evaluator()(x, vals);
  std::vector<double> phi(n), dphi(n);
  eval_phi_deriv_all(*t_, *w_, n - 1, x, phi, dphi);
  const std::vector<double> cum = table_->cumulative(x);
  const std::vector<double>& tot = table_->totals();
  p.phi = Eigen::Map<Eigen::VectorXd>(vals.data(), n);
  p.dphi = Eigen::Map<Eigen::VectorXd>(dphi.data(), n);
  p.cum.resize(n);
  p.eps.resize(n);
  for (int k = 0; k < n; ++k) {
    p.cum(k) = cum[k];
    p.eps(k) = cum[k] - 0.5 * tot[k];
  }
  const bool head = x <= 0.5 * beta_n;
  auto fill = [&](auto colf, Eigen::VectorXd& val, Eigen::VectorXd& c, Eigen::VectorXd& e, Eigen::VectorXd& tl) {
    val.resize(m);
    c.resize(m);
    e.resize(m);
    tl.resize(m);
    for (int i = 0; i < m; ++i) {
      const int col = colf(i);
      val(i) = vals[col];
      c(i) = cum[col];
      e(i) = cum[col] - 0.5 * tot[col];
      tl(i) = head ? cum[col] : cum[col] - tot[col];
    }
  };
  fill([this](int i) { return col_Phi1(i); }, p.Phi1, p.cum1, p.eps1, p.tail1);
  fill([this](int i) { return col_Phi2(i); }, p.Phi2, p.cum2, p.eps2, p.tail2);
  return p;
}

double WidomSystem::K(const WidomPoint& x, const WidomPoint& y) const { return x.phi.dot(y.phi); }

double WidomSystem::S4(const WidomPoint& x, const WidomPoint& y) const {
  return x.phi.dot(y.phi) - x.Phi2.dot(A21 * y.tail1 + G11 * y.tail2);
}

double WidomSystem::epsS4(const WidomPoint& x, const WidomPoint& y) const {
  return x.cum.dot(y.phi) - x.cum2.dot(A21 * y.tail1 + G11 * y.tail2);
}

double WidomSystem::dS4_dy(const WidomPoint& x, const WidomPoint& y) const {
  return x.phi.dot(y.dphi) - x.Phi2.dot(A21 * y.Phi1 + G11 * y.Phi2);
}

double WidomSystem::S1(const WidomPoint& x, const WidomPoint& y) const {
  return x.phi.dot(y.phi) - x.Phi1.dot(A12 * y.eps2 + Ghat11 * y.eps1);
}

double WidomSystem::epsS1(const WidomPoint& x, const WidomPoint& y) const {
  return x.eps.dot(y.phi) - x.eps1.dot(A12 * y.eps2 + Ghat11 * y.eps1);
}

double WidomSystem::dS1_dy(const WidomPoint& x, const WidomPoint& y) const {
  return x.phi.dot(y.dphi) - x.Phi1.dot(A12 * y.Phi2 + Ghat11 * y.Phi1);
}

Mat2 WidomSystem::matrix_kernel(int beta, const WidomPoint& x, const WidomPoint& y) const {
  Mat2 k{};
  if (beta == 4) {
    k[0][0] = 0.5 * S4(x, y);
    k[0][1] = -0.5 * dS4_dy(x, y);
    k[1][0] = 0.5 * epsS4(x, y);
    k[1][1] = 0.5 * S4(y, x);
  } else if (beta == 1) {
    k[0][0] = S1(x, y);
    k[0][1] = -dS1_dy(x, y);
    k[1][0] = epsS1(x, y) - 0.5 * sgn(x.x - y.x);
    k[1][1] = S1(y, x);
  } else {
    throw_domain("matrix_kernel", "beta must be 1 or 4");
  }
  return k;
}

double WidomSystem::bac_residual() const {
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  target.bottomRows(m) = C.bottomRows(m);
  return max_abs(B * A * C - target) / std::max(max_abs(C), 1.0);
}

double WidomSystem::moreC_residual() const {
  const Eigen::VectorXd r = A21 * eps1_inf + G11 * eps2_inf;
  const double e = std::max(eps1_inf.cwiseAbs().maxCoeff(), eps2_inf.cwiseAbs().maxCoeff());
  const double scale = A21.cwiseAbs().rowwise().sum().maxCoeff() * e;
  return r.cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

double WidomSystem::skew_defect(const Eigen::MatrixXd& M) const {
  const double s = max_abs(M);
  return s > 0.0 ? max_abs(M + M.transpose()) / s : 0.0;
}

Mat2 conjugate(const Mat2& k, double lambda) {
  const double l2 = lambda * lambda;
  return {{{k[0][0], k[0][1] / l2}, {k[1][0] * l2, k[1][1]}}};
}

Mat2 scaled_matrix_kernel(const WidomSystem& sys, int beta, const ScalingConstants& sc, double xi, double eta) {
  const double s2 = sc.scale_sq(beta);
  const WidomPoint px = sys.point(sc.map(xi, beta)), py = sys.point(sc.map(eta, beta));
  const Mat2 k = conjugate(sys.matrix_kernel(beta, px, py), std::sqrt(s2));
  return {{{k[0][0] / s2, k[0][1] / s2}, {k[1][0] / s2, k[1][1] / s2}}};
}

void to_json(nlohmann::json& j, const WidomSystem& s) {
  auto mat = [](const Eigen::MatrixXd& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < M.rows(); ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (int k = 0; k < M.cols(); ++k) r.push_back(M(i, k));
      rows.push_back(r);
    }
    return rows;
  };
  j = nlohmann::json{{"n", s.n},           {"m", s.m},         {"alpha", s.alpha},
                     {"beta_n", s.beta_n}, {"d_n", s.d_n},     {"A21", mat(s.A21)},
                     {"A12", mat(s.A12)},  {"B", mat(s.B)},    {"C", mat(s.C)},
                     {"G11", mat(s.G11)},  {"Ghat11", mat(s.Ghat11)},
                     {"b_defect", s.b_defect}, {"cond_C11", s.cond_C11}, {"cond_Chat22", s.cond_Chat22},
                     {"grid_panels", s.table().grid().panel_count()},
                     {"nodes_per_panel", s.table().grid().nodes_per_panel}};
}

}  // namespace rmt
