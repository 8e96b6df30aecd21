#include "rmt/tmtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {
constexpr double kPi = std::numbers::pi;

BoundCheck upper(std::string name, double value, double bound) {
  return {std::move(name), value, bound, bound - value, value <= bound};
}

BoundCheck strict_upper(std::string name, double value, double bound) {
  return {std::move(name), value, bound, bound - value, value < bound};
}

BoundCheck lower(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value - bound, value >= bound};
}

BoundCheck equal(std::string name, double value, double target, double tol) {
  const double err = std::abs(value - target);
  return {std::move(name), value, target, tol - err, err <= tol};
}

double theta_integral(int m, double freq, bool with_cos) {
  const std::vector<double> h = limiting_h(m);
  auto f = [&](double t) {
    const double hv = eval_poly(h, std::cos(t) * std::cos(t));
    const double s = std::sin(t);
    double r = s < 1e-10 ? freq : std::sin(freq * t) / s;
    if (with_cos) r *= std::cos(t);
    return r / hv;
  };
  // a few panels per oscillation; the doubled rule is the error estimate
  const int panels = 4 + static_cast<int>(std::ceil(freq / 2.0));
  const double v = integrate_gl(f, 0.0, kPi / 2, panels, 20);
  const double v2 = integrate_gl(f, 0.0, kPi / 2, 2 * panels, 20);
  if (!std::isfinite(v) || std::abs(v - v2) > 1e-11 * std::max(1.0, std::abs(v)))
    throw QuadratureError("theta_integral: no convergence");
  return 4.0 / kPi * v;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double tm_c(int m, int l) {
  if (m < 1) throw_domain("tm_c", "m must be >= 1");
  if (l < 0 || l > m - 1) return 0.0;
  // c_0 = A_{m-1}/A_m, then c_l / c_{l-1} = (m-l)/(m-1+l)
  double c = central_binomial_ratio(m - 1) / central_binomial_ratio(m);
  for (int j = 1; j <= l; ++j) c *= double(m - j) / (m - 1 + j);
  return c;
}

double integral_I(int m, int q) {
  if (q < 1) throw_domain("integral_I", "q must be >= 1");
  return theta_integral(m, 2.0 * q - 1.0, false);
}

double integral_Ihat(int m, int q) {
  if (q < 1) throw_domain("integral_Ihat", "q must be >= 1");
  return theta_integral(m, 2.0 * q, true);
}

TmSystem build_tm(int m) {
  if (m < 1) throw_domain("build_tm", "m must be >= 1");
  TmSystem s;
  s.m = m;
  s.A_m = central_binomial_ratio(m);
  s.c.resize(m);
  for (int l = 0; l < m; ++l) s.c[l] = tm_c(m, l);
  s.d.assign(m, 0.0);
  for (int k = m - 2; k >= 0; --k) s.d[k] = s.d[k + 1] + s.c[k + 1];
  s.gamma_c = 1.0 - (m > 1 ? s.c[1] : 0.0) / 4.0;

  const int k = m - 1;
  s.Q = Eigen::MatrixXd::Zero(k, k);
  s.R = Eigen::MatrixXd::Zero(k, k);
  s.v = Eigen::VectorXd::Zero(k);
  s.v0 = Eigen::VectorXd::Zero(k);
  s.v1 = Eigen::VectorXd::Zero(k);
  std::vector<double> ihat(std::max(0, 2 * k - 1) + 1, 0.0);
  for (int q = 1; q <= 2 * k - 1; ++q) ihat[q] = integral_Ihat(m, q);
  const double rt = std::sqrt(double(m) / (2 * m - 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      s.Q(i, j) = tm_c(m, i + j + 1);
      s.R(i, j) = ihat[i + j + 1];
    }
    const double Ij = integral_I(m, i + 1);
    s.v(i) = rt * Ij - 0.5 / std::sqrt(double(m));
    s.v0(i) = (i == 0 ? 0.5 * rt : 0.0) - 0.5 / std::sqrt(double(m));
    s.v1(i) = rt * (Ij - (i == 0 ? 0.5 : 0.0));
  }

  s.X = Eigen::MatrixXd::Zero(m, m);
  s.Y = Eigen::MatrixXd::Zero(m, m);
  s.X.topLeftCorner(k, k) = s.R;
  s.X.block(k, 0, 1, k) = s.v.transpose();
  s.X.block(0, k, k, 1) = s.v;
  s.X(k, k) = 1.0 - 1.0 / std::sqrt(2.0 * m - 1.0);
  s.Y.topLeftCorner(k, k) = s.Q;
  s.Y(k, k) = 0.5;
  s.T = Eigen::MatrixXd::Identity(m, m) - s.X * s.Y;

  if (k > 0) {
    Eigen::MatrixXd U0 = Eigen::MatrixXd::Identity(k, k);
    U0.row(0) -= 0.25 * s.Q.row(0);
    s.Qhat = s.Q * U0.inverse();
  } else {
    s.Qhat = Eigen::MatrixXd::Zero(0, 0);
  }
  return s;
}

TmInvertibility verify_tm_invertible(const TmSystem& s) {
  TmInvertibility r;
  r.det = s.T.determinant();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.T);
  const auto& sv = svd.singularValues();
  r.cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  r.det_yx = (Eigen::MatrixXd::Identity(s.m, s.m) - s.Y * s.X).determinant();
  return r;
}

bool NormReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok; });
}

NormReport verify_norm_bounds(const TmSystem& s) {
  if (s.m < 2) throw_domain("verify_norm_bounds", "m must be >= 2");
  const int m = s.m;
  NormReport r;
  // every entry of Qhat is non-negative, so the inf->1 norm is the entry sum
  r.qhat_norm = s.Qhat.cwiseAbs().sum();
  r.qhat_norm_closed = s.d[0] * s.d[0] / (4.0 * s.gamma_c) + 0.5 * m * s.c[1];
  const Eigen::RowVectorXd vq = s.v.transpose() * s.Qhat;
  r.vq_norm = vq.cwiseAbs().sum();
  r.vqv = vq * s.v;
  r.checks.push_back(upper("qhat_norm", r.qhat_norm, m * (kPi / 12 + 0.5)));
  r.checks.push_back(upper("vqhat_l1", r.vq_norm, 0.3918 * std::sqrt(double(m))));
  r.checks.push_back(strict_upper("vqhatv", r.vqv, 1.0 / std::sqrt(2.0 * m - 1)));
  r.checks.push_back(equal("qhat_norm_identity", r.qhat_norm, r.qhat_norm_closed,
                           1e-12 * std::max(1.0, r.qhat_norm_closed)));
  r.checks.push_back(lower("qhat_min_entry", s.Qhat.minCoeff(), 0.0));
  return r;
}

std::vector<BoundCheck> verify_integral_bounds(int m, int q_max) {
  std::vector<BoundCheck> out;
  double worst_i = 0.0, worst_ih = 0.0;
  for (int q = 1; q <= q_max; ++q) {
    worst_i = std::max(worst_i, std::abs(integral_I(m, q) - (q == 1 ? 0.5 : 0.0)));
    worst_ih = std::max(worst_ih, std::abs(integral_Ihat(m, q) - (q == 1 ? 0.25 : 0.0)));
  }
  out.push_back(upper("I_minus_half_delta", worst_i, 2.22 / (2.0 * m)));
  out.push_back(upper("Ihat_minus_quarter_delta", worst_ih, 2.18 / (2.0 * m)));
  return out;
}

double aux_u(int m, double x) {
  const double h = eval_poly(limiting_h(m), x * x);
  return 1.0 / h - 0.5 * (1.0 - x * x) + 0.25 / m;
}

double aux_W(int q, double theta) {
  double s = theta;
  for (int k = 1; k < q; ++k) s += std::sin(2.0 * k * theta) / k;
  return 4.0 / kPi * s;
}

double aux_What(int q, double theta) { return 0.5 * (aux_W(q + 1, theta) + aux_W(q, theta)); }

std::vector<BoundCheck> verify_aux(int m, int q_max) {
  std::vector<BoundCheck> out;
  out.push_back(equal("u(0)", aux_u(m, 0.0), 0.0, 1e-12));
  out.push_back(equal("u(1)", aux_u(m, 1.0), 0.5 / m, 1e-12));
  double umin = INFINITY;
  for (int i = 0; i <= 4000; ++i) umin = std::min(umin, aux_u(m, i / 4000.0));
  out.push_back(strict_upper("-min_u", -umin, 0.25 / m));
  double wmax = 0.0, whmax = 0.0, wmin = INFINITY, whmin = INFINITY;
  const int grid = 20000;
  for (int i = 0; i <= grid; ++i) {
    const double t = 0.5 * kPi * i / grid;
    // W_1..W_{q_max+1} by running sum over k
    double partial = t, prev = 4.0 / kPi * t;
    for (int q = 1; q <= q_max; ++q) {
      partial += std::sin(2.0 * q * t) / q;
      const double next = 4.0 / kPi * partial;
      const double wh = 0.5 * (prev + next);
      wmax = std::max(wmax, prev);
      wmin = std::min(wmin, prev);
      whmax = std::max(whmax, wh);
      whmin = std::min(whmin, wh);
      prev = next;
    }
  }
  out.push_back(upper("max_W", wmax, 2.44));
  out.push_back(lower("min_W", wmin, -1e-14));
  out.push_back(upper("max_What", whmax, 2.36));
  out.push_back(lower("min_What", whmin, -1e-14));
  return out;
}

std::vector<BoundCheck> verify_d_sequence(const TmSystem& s) {
  const int m = s.m;
  std::vector<BoundCheck> out;
  double sum = 0.0;
  for (double dj : s.d) sum += dj;
  const double c1 = m > 1 ? s.c[1] : 0.0;
  out.push_back(equal("sum_d", sum, 0.5 * m * c1, 1e-12 * std::max(1.0, sum)));
  const double root = std::sqrt(m * kPi) / 2.0;
  out.push_back(upper("d0_upper", s.d[0], root));
  out.push_back(lower("d0_lower", s.d[0], root - 1.0));
  if (m > 1) {
    const double r1 = s.d[1] / s.c[1];
    double worst = 0.0;
    for (int j = 1; j < m; ++j) worst = std::max(worst, s.d[j] / s.c[j]);
    out.push_back(upper("d_over_c", worst, r1 * (1.0 + 1e-14)));
  }
  return out;
}

double aya_identity(const TmSystem& s) {
  Eigen::VectorXd a = Eigen::VectorXd::Ones(s.m);
  a(s.m - 1) = std::sqrt(double(s.m) / (2 * s.m - 1));
  return a.dot(s.Y * a);
}

}  // namespace rmt
