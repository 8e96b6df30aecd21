#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rmt/limits.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/weights.hpp"

namespace rmt {

class WidomSystem;

struct NystromGrid {
  double a = 0.0, b = 0.0;
  int order = 0;
  std::vector<double> x, w;

  static NystromGrid gauss_legendre(double a, double b, int order);
};

using ScalarKernel = std::function<double(double, double)>;
using BlockKernel = std::function<Mat2(double, double)>;

// det(I - K) on the grid; symmetric sqrt-weight Nystrom matrix, partial-pivot LU.
double det_scalar(const ScalarKernel& k, const NystromGrid& g);
// 2N x 2N assembly. With delta set, entries are conjugated by diag(x^delta, x^{-delta}).
// If K21 carries a jump sgn21 * sgn(x - y), that term is removed from k and integrated with the
// spectral integration matrix instead of the Nystrom rule.
double det_block2(const BlockKernel& k, const NystromGrid& g, std::optional<double> delta = std::nullopt,
                  double sgn21 = 0.0);
// Nystrom matrix I - K, exposed for tests.
std::vector<double> nystrom_matrix(const ScalarKernel& k, const NystromGrid& g);

// Midpoint of (max(0, (1-alpha)/2), 1/2).
double default_delta(double alpha);

// Probability of no eigenvalue in the kernel's interval: det for beta = 2, sqrt det otherwise.
double gap_from_det(int beta, double det);

struct FredholmValue {
  double value = 0.0;
  double value_refined = 0.0;  // same quantity at twice the order
  int order = 0;
  double self_conv() const { return std::abs(value - value_refined); }
};

// Limit laws. Smallest eigenvalue on (0, s) in hard-edge units.
FredholmValue smallest_eig_cdf_limit(int beta, double alpha, double s, int order = 40);
// Largest eigenvalue: the soft-edge kernel on [s, s + T] with Ai below 1e-12 past s + T.
FredholmValue largest_eig_cdf_limit(int beta, double s, int order = 40);
// Probability of an empty interval (0, xi) in bulk units.
FredholmValue bulk_gap_limit(int beta, double xi, int order = 40);

double soft_edge_window(double s);

// Finite n, beta = 2: kernel K_n on (0, t) in the original variable.
FredholmValue smallest_eig_cdf_unitary(const RecurrenceTable& t, const Weight& w, int n, double s_phys,
                                       int order = 40);
// Finite-n kernels. beta = 2 needs only the recurrence; beta = 1, 4 need the Widom system
// (built at even n; beta = 4 gives K_{n/2,4}).
struct FiniteSource {
  const RecurrenceTable* table = nullptr;
  const Weight* weight = nullptr;
  int n = 0;
  const WidomSystem* widom = nullptr;
};

// Local units of the regime: s maps through sc.map, the Jacobian is part of the kernel.
FredholmValue smallest_eig_cdf_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double s,
                                      int order = 40);
FredholmValue largest_eig_cdf_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double s,
                                     int order = 40);
FredholmValue bulk_gap_finite(int beta, const FiniteSource& src, const ScalingConstants& sc, double xi,
                              int order = 40);

// det[K_n(x_i, x_j)]
double correlation_beta2(const RecurrenceTable& t, const Weight& w, int n, const std::vector<double>& points);

}  // namespace rmt
