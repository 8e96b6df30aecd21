#include "rmt/fredholm.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"
#include "rmt/widom.hpp"

namespace rmt {

namespace {

double lu_det(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return 1.0;
  const double d = M.partialPivLu().determinant();
  if (!std::isfinite(d)) throw DomainError("Fredholm determinant out of range");
  return d;
}

void check_beta(const char* where, int beta) {
  if (beta != 1 && beta != 2 && beta != 4) throw_domain(where, "beta must be 1, 2 or 4");
}

template <class F>
FredholmValue refine(F&& f, int order) {
  FredholmValue v;
  v.order = order;
  v.value = f(order);
  v.value_refined = f(2 * order);
  return v;
}

// phi_0..phi_{n-1} at each node, row per node
Eigen::MatrixXd phi_rows(const RecurrenceTable& t, const Weight& w, int n, const std::vector<double>& xs) {
  Eigen::MatrixXd P(xs.size(), n);
  std::vector<double> buf(n);
  for (size_t i = 0; i < xs.size(); ++i) {
    eval_phi_all(t, w, n - 1, xs[i], buf);
    for (int k = 0; k < n; ++k) P(i, k) = buf[k];
  }
  return P;
}

double unitary_det(const RecurrenceTable& t, const Weight& w, int n, const NystromGrid& g,
                   const std::function<double(double)>& map, double jac) {
  std::vector<double> xs(g.order);
  for (int i = 0; i < g.order; ++i) xs[i] = map(g.x[i]);
  Eigen::MatrixXd P = phi_rows(t, w, n, xs);
  for (int i = 0; i < g.order; ++i) P.row(i) *= std::sqrt(g.w[i] * jac);
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(g.order, g.order) - P * P.transpose();
  return lu_det(M);
}

double assemble_block(const std::function<Mat2(int, int)>& k, const NystromGrid& g, std::optional<double> delta,
                      double sgn21) {
  const int N = g.order;
  std::vector<double> gx(N, 1.0);
  if (delta)
    for (int i = 0; i < N; ++i) gx[i] = std::pow(g.x[i], *delta);
  std::vector<double> S;
  if (sgn21 != 0.0) {
    S = gl_integration_matrix(gauss_legendre(N));
    for (double& v : S) v *= 0.5 * (g.b - g.a);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2 * N, 2 * N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      Mat2 v = k(i, j);
      const double wij = std::sqrt(g.w[i] * g.w[j]);
      const double gi = gx[i], gj = gx[j];
      if (sgn21 != 0.0) {
        v[1][0] -= sgn21 * sgn(g.x[i] - g.x[j]);
        // int sgn(x_i - y) f(y) dy = 2 int_a^{x_i} f - int_a^b f
        const double t = 2.0 * S[static_cast<size_t>(i) * N + j] - g.w[j];
        M(N + i, j) -= sgn21 * std::sqrt(g.w[i] / g.w[j]) * t / (gi * gj);
      }
      const double e[4] = {v[0][0] * gi / gj, v[0][1] * gi * gj, v[1][0] / (gi * gj), v[1][1] * gj / gi};
      for (double x : e)
        if (!std::isfinite(x)) throw SingularityError("det_block2: unbounded kernel entry on the grid");
      M(i, j) -= wij * e[0];
      M(i, N + j) -= wij * e[1];
      M(N + i, j) -= wij * e[2];
      M(N + i, N + j) -= wij * e[3];
    }
  }
  return lu_det(M);
}

// the beta = 1 kernels carry -1/2 sgn(x - y) in K21
double jump_of(int beta) { return beta == 1 ? -0.5 : 0.0; }

double block_det_widom(int beta, const WidomSystem& sys, const ScalingConstants& sc, const NystromGrid& g,
                       std::optional<double> delta) {
  std::vector<WidomPoint> pts;
  pts.reserve(g.order);
  for (int i = 0; i < g.order; ++i) pts.push_back(sys.point(sc.map(g.x[i], beta)));
  const double s2 = sc.scale_sq(beta);
  auto k = [&](int i, int j) {
    const Mat2 v = conjugate(sys.matrix_kernel(beta, pts[i], pts[j]), std::sqrt(s2));
    return Mat2{{{v[0][0] / s2, v[0][1] / s2}, {v[1][0] / s2, v[1][1] / s2}}};
  };
  return assemble_block(k, g, delta, jump_of(beta));
}

}  // namespace

NystromGrid NystromGrid::gauss_legendre(double a, double b, int order) {
  if (!(b > a) || order < 1) throw_domain("NystromGrid", "need a < b and order >= 1");
  const Rule r = gauss_legendre_on(order, a, b);
  return {a, b, order, r.x, r.w};
}

std::vector<double> nystrom_matrix(const ScalarKernel& k, const NystromGrid& g) {
  const int N = g.order;
  std::vector<double> M(static_cast<size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      M[static_cast<size_t>(i) * N + j] = (i == j ? 1.0 : 0.0) - std::sqrt(g.w[i] * g.w[j]) * k(g.x[i], g.x[j]);
  return M;
}

double det_scalar(const ScalarKernel& k, const NystromGrid& g) {
  const std::vector<double> M = nystrom_matrix(k, g);
  return lu_det(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      M.data(), g.order, g.order));
}

double det_block2(const BlockKernel& k, const NystromGrid& g, std::optional<double> delta, double sgn21) {
  return assemble_block([&](int i, int j) { return k(g.x[i], g.x[j]); }, g, delta, sgn21);
}

double default_delta(double alpha) { return 0.5 * (std::max(0.0, 0.5 * (1.0 - alpha)) + 0.5); }

double gap_from_det(int beta, double det) {
  check_beta("gap_from_det", beta);
  if (beta == 2) return det;
  if (det < -1e-9) throw DomainError("gap_from_det: negative determinant under the root");
  return std::sqrt(std::max(det, 0.0));
}

double soft_edge_window(double s) {
  // Ai(x) < 1e-12 for x > 12
  return std::max(12.0 - s, 4.0);
}

FredholmValue smallest_eig_cdf_limit(int beta, double alpha, double s, int order) {
  check_beta("smallest_eig_cdf_limit", beta);
  if (!(s > 0.0)) throw_domain("smallest_eig_cdf_limit", "s must be positive");
  return refine(
      [&](int N) {
        const NystromGrid g = NystromGrid::gauss_legendre(0.0, s, N);
        if (beta == 2) return 1.0 - det_scalar([alpha](double x, double y) { return kernel_bessel(alpha, x, y); }, g);
        const double d = det_block2([&](double x, double y) { return kernel_hard_limit(beta, alpha, x, y); }, g,
                                    default_delta(alpha), jump_of(beta));
        return 1.0 - gap_from_det(beta, d);
      },
      order);
}

FredholmValue largest_eig_cdf_limit(int beta, double s, int order) {
  check_beta("largest_eig_cdf_limit", beta);
  const double b = s + soft_edge_window(s);
  return refine(
      [&](int N) {
        const NystromGrid g = NystromGrid::gauss_legendre(s, b, N);
        if (beta == 2) return det_scalar([](double x, double y) { return kernel_airy(x, y); }, g);
        const double d = det_block2([&](double x, double y) { return kernel_soft_limit(beta, x, y); }, g, std::nullopt,
                                    jump_of(beta));
        return gap_from_det(beta, d);
      },
      order);
}

FredholmValue bulk_gap_limit(int beta, double xi, int order) {
  check_beta("bulk_gap_limit", beta);
  if (xi <= 0.0) return {1.0, 1.0, order};
  return refine(
      [&](int N) {
        const NystromGrid g = NystromGrid::gauss_legendre(0.0, xi, N);
        if (beta == 2) return det_scalar([](double x, double y) { return kernel_sine(x - y); }, g);
        const double d = det_block2([&](double x, double y) { return kernel_bulk_limit(beta, x, y); }, g, std::nullopt,
                                    jump_of(beta));
        return gap_from_det(beta, d);
      },
      order);
}

FredholmValue smallest_eig_cdf_unitary(const RecurrenceTable& t, const Weight& w, int n, double s_phys, int order) {
  if (!(s_phys > 0.0)) throw_domain("smallest_eig_cdf_unitary", "s must be positive");
  return refine(
      [&](int N) {
        const NystromGrid g = NystromGrid::gauss_legendre(0.0, s_phys, N);
        return 1.0 - unitary_det(t, w, n, g, [](double x) { return x; }, 1.0);
      },
      order);
}

namespace {

double finite_gap(int beta, const FiniteSource& src, const ScalingConstants& sc, const NystromGrid& g,
                  std::optional<double> delta) {
  if (beta == 2) {
    if (!src.table || !src.weight) throw DomainError("finite kernel: recurrence table missing");
    const double s2 = sc.scale_sq(2);
    return unitary_det(*src.table, *src.weight, src.n, g, [&](double x) { return sc.map(x, 2); }, 1.0 / s2);
  }
  if (!src.widom) throw DomainError("finite kernel: Widom system missing");
  return gap_from_det(beta, block_det_widom(beta, *src.widom, sc, g, delta));
}

}  // namespace

FredholmValue smallest_eig_cdf_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double s,
                                      int order) {
  check_beta("smallest_eig_cdf_finite", beta);
  if (!(s > 0.0)) throw_domain("smallest_eig_cdf_finite", "s must be positive");
  const double alpha = src.weight ? src.weight->alpha() : src.widom->alpha;
  return refine(
      [&](int N) {
        const NystromGrid g = NystromGrid::gauss_legendre(0.0, s, N);
        return 1.0 - finite_gap(beta, src, sc, g, default_delta(alpha));
      },
      order);
}

FredholmValue largest_eig_cdf_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double s,
                                     int order) {
  check_beta("largest_eig_cdf_finite", beta);
  const double b = s + soft_edge_window(s);
  return refine(
      [&](int N) { return finite_gap(beta, src, sc, NystromGrid::gauss_legendre(s, b, N), std::nullopt); }, order);
}

FredholmValue bulk_gap_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double xi, int order) {
  check_beta("bulk_gap_finite", beta);
  if (xi <= 0.0) return {1.0, 1.0, order};
  return refine(
      [&](int N) { return finite_gap(beta, src, sc, NystromGrid::gauss_legendre(0.0, xi, N), std::nullopt); },
      order);
}

double correlation_beta2(const RecurrenceTable& t, const Weight& w, int n, const std::vector<double>& points) {
  const Eigen::MatrixXd P = phi_rows(t, w, n, points);
  return lu_det(P * P.transpose());
}

}  // namespace rmt
