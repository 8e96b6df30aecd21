#include "rmt/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/widom.hpp"

namespace rmt {

Lattice default_lattice(Regime r) {
  switch (r) {
    case Regime::hard: return {{0.5, 1.0, 2.0, 4.0, 8.0}, {}};
    case Regime::soft: return {{-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0}, {}};
    case Regime::bulk: return {{-2.0, -1.0, 0.0, 1.0, 2.0}, {0.3, 0.5, 0.7}};
  }
  return {};
}

double limit_kernel_beta2(Regime r, double alpha, double xi, double eta) {
  switch (r) {
    case Regime::hard: return kernel_bessel(alpha, xi, eta);
    case Regime::soft: return kernel_airy(xi, eta);
    case Regime::bulk: return kernel_sine(xi - eta);
  }
  return 0.0;
}

Mat2 limit_matrix_kernel(Regime r, int beta, double alpha, double xi, double eta) {
  switch (r) {
    case Regime::hard: return kernel_hard_limit(beta, alpha, xi, eta);
    case Regime::soft: return kernel_soft_limit(beta, xi, eta);
    case Regime::bulk: return kernel_bulk_limit(beta, xi, eta);
  }
  return {};
}

namespace {

std::vector<double> bulk_points(Regime r, const Lattice& lat) {
  if (r != Regime::bulk) return {0.5};
  if (lat.x_bulk.empty()) throw DomainError("bulk lattice needs at least one x");
  return lat.x_bulk;
}

}  // namespace

double unitary_kernel_error(Regime r, const RecurrenceTable& t, const Weight& w, const EquilibriumData& eq,
                            const Lattice& lat, double soft_c) {
  double err = 0.0;
  for (double xb : bulk_points(r, lat)) {
    const ScalingConstants sc = scalings(eq, r, xb);
    const double s2 = sc.scale_sq(2);
    for (double xi : lat.points)
      for (double eta : lat.points) {
        const double k = cd_kernel(t, w, eq.n, sc.map(xi, 2), sc.map(eta, 2)) / s2;
        const double wt = error_weights(r, 2, w.alpha(), xi, eta, soft_c)[0][0];
        err = std::max(err, std::abs(k - limit_kernel_beta2(r, w.alpha(), xi, eta)) / wt);
      }
  }
  return err;
}

Mat2 matrix_kernel_error(Regime r, int beta, const WidomSystem& sys, const EquilibriumData& eq, const Lattice& lat,
                         double soft_c) {
  if (beta != 1 && beta != 4) throw_domain("matrix_kernel_error", "beta must be 1 or 4");
  Mat2 err{};
  for (double xb : bulk_points(r, lat)) {
    const ScalingConstants sc = scalings(eq, r, xb);
    for (double xi : lat.points)
      for (double eta : lat.points) {
        const Mat2 k = scaled_matrix_kernel(sys, beta, sc, xi, eta);
        const Mat2 l = limit_matrix_kernel(r, beta, sys.alpha, xi, eta);
        const Mat2 wt = error_weights(r, beta, sys.alpha, xi, eta, soft_c);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) err[i][j] = std::max(err[i][j], std::abs(k[i][j] - l[i][j]) / wt[i][j]);
      }
  }
  return err;
}

std::vector<ConvergenceRow> convergence_table(Regime r, int beta, const Weight& w, const RecurrenceTable& t,
                                              const std::vector<int>& ns, const Lattice& lat, double soft_c) {
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    const EquilibriumData eq = equilibrium(w, n);
    ConvergenceRow row;
    row.n = n;
    if (beta == 2) {
      const double e = unitary_kernel_error(r, t, w, eq, lat, soft_c);
      row.err = {{{e, e}, {e, e}}};
    } else {
      if (n % 2 != 0) throw DomainError("beta = 1, 4 kernels need even n");
      const WidomSystem sys = WidomSystem::build(w, n, t, eq);
      row.err = matrix_kernel_error(r, beta, sys, eq, lat, soft_c);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> decay_ratios(const std::vector<ConvergenceRow>& rows, int i, int j) {
  std::vector<double> out;
  for (size_t k = 0; k + 1 < rows.size(); ++k) out.push_back(rows[k].err[i][j] / rows[k + 1].err[i][j]);
  return out;
}

}  // namespace rmt
