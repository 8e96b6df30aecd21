#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmt/weights.hpp"

namespace rmt {

struct PrecisionContext {
  int mantissa_bits = 256;
  int panel_count = 0;  // 0: derived from n_max
  int nodes_per_panel = 32;

  // Defaults, with RMT_PRECISION_BITS overriding mantissa_bits.
  static PrecisionContext from_env();
};

struct RecurrenceTable {
  int n_max = 0;
  double alpha = 0.0;
  std::vector<double> a, b;    // a_0..a_{n_max}, b_0..b_{n_max}
  std::vector<double> log_gamma;  // log of the leading coefficients
  std::vector<double> p_at_zero;
  std::vector<std::string> a_str, b_str, gamma_str, p0_str;
  double x_max = 0.0;
  int mantissa_bits = 0;
  int panel_count = 0;
  int nodes_per_panel = 0;

  double gamma(int k) const;
};

// Right end of the discretized support: beyond it phi_{n}^2 is below 10^{-digits}.
double choose_x_max(const Weight& w, int n, double digits);

RecurrenceTable compute_recurrence(const Weight& w, int n_max, PrecisionContext ctx = PrecisionContext::from_env());

double eval_phi(const RecurrenceTable& t, const Weight& w, int k, double x);
double eval_phi_deriv(const RecurrenceTable& t, const Weight& w, int k, double x);
// phi_0..phi_kmax at x (out.size() >= kmax+1); optional derivatives.
void eval_phi_all(const RecurrenceTable& t, const Weight& w, int kmax, double x, std::span<double> out);
void eval_phi_deriv_all(const RecurrenceTable& t, const Weight& w, int kmax, double x, std::span<double> phi,
                        std::span<double> dphi);
// orthonormal p_0..p_kmax at x without the weight factor
void eval_p_all(const RecurrenceTable& t, int kmax, double x, std::span<double> out);

double cd_kernel(const RecurrenceTable& t, const Weight& w, int n, double x, double y);
// Two-term Christoffel-Darboux form, x != y.
double cd_kernel_ratio(const RecurrenceTable& t, const Weight& w, int n, double x, double y);

// int_0^inf p_j(y) w(y) / y dy, alpha > 0. panel_scale multiplies the panel count.
double cauchy_at_zero(const RecurrenceTable& t, const Weight& w, int j, double panel_scale = 1.0);

// Eigenvalues of the (n x n) Jacobi matrix, i.e. the zeros of p_n.
std::vector<double> jacobi_zeros(const RecurrenceTable& t, int n);

// Composite Gauss grid on [0, x_max] in the variable t = sqrt(x / x_max).
struct PanelGrid {
  double x_max = 0.0;
  std::vector<double> edges;  // t-edges
  int nodes_per_panel = 0;
  std::vector<double> x, w;   // nodes in x, weights for dx

  static PanelGrid build(double x_max, int uniform_panels, int nodes_per_panel, int graded_levels,
                         double ratio = 0.25);
  int panel_count() const { return static_cast<int>(edges.size()) - 1; }
  int locate(double x) const;
};

// Values and running integrals of a family of functions on a PanelGrid.
class FunctionTable {
 public:
  using Eval = std::function<void(double x, std::span<double> out)>;

  FunctionTable(PanelGrid grid, int nfun, Eval eval);

  int size() const { return nfun_; }
  const PanelGrid& grid() const { return grid_; }
  int node_count() const { return static_cast<int>(grid_.x.size()); }
  double value(int node, int f) const { return vals_[idx(node, f)]; }
  double cumulative_at_node(int node, int f) const { return cum_[idx(node, f)]; }
  const std::vector<double>& totals() const { return totals_; }

  // F_f(x) = int_0^x f for every f
  std::vector<double> cumulative(double x) const;
  // eps f(x) = F_f(x) - F_f(inf)/2 for every f
  std::vector<double> eps(double x) const;
  double inner(int f, int g) const;
  double inner_weighted(int f, int g, const std::function<double(double)>& h) const;
  // <eps f, g>
  double eps_inner(int f, int g) const;
  const Eval& evaluator() const { return eval_; }

 private:
  size_t idx(int node, int f) const { return static_cast<size_t>(node) * nfun_ + f; }
  PanelGrid grid_;
  int nfun_;
  Eval eval_;
  std::vector<double> vals_, cum_, panel_start_, totals_;
};

PanelGrid default_grid(const Weight& w, int kmax, double resolution = 1.0);
// phi_0..phi_kmax tabulated with running integrals
FunctionTable antiderivative_table(const RecurrenceTable& t, const Weight& w, int kmax, const PanelGrid& grid);

// <f, g> for values tabulated on the nodes of q.
double inner_product(const std::vector<double>& f, const std::vector<double>& g, const PanelGrid& q);

void to_json(nlohmann::json& j, const RecurrenceTable& t);
RecurrenceTable recurrence_from_json(const nlohmann::json& j);

}  // namespace rmt
