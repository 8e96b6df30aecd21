#pragma once

#include <vector>

#include "rmt/equilibrium.hpp"
#include "rmt/limits.hpp"
#include "rmt/orthopoly.hpp"

namespace rmt {

class WidomSystem;

struct Lattice {
  std::vector<double> points;
  std::vector<double> x_bulk;  // bulk only
};

// hard: {0.5,1,2,4,8}; soft: {-4,...,2}; bulk: {-2,...,2} at x in {0.3,0.5,0.7}
Lattice default_lattice(Regime r);

// beta = 2 limit, scalar
double limit_kernel_beta2(Regime r, double alpha, double xi, double eta);
Mat2 limit_matrix_kernel(Regime r, int beta, double alpha, double xi, double eta);

// sup over the lattice of |scaled K_n - limit| / error weight
double unitary_kernel_error(Regime r, const RecurrenceTable& t, const Weight& w, const EquilibriumData& eq,
                            const Lattice& lat, double soft_c = 0.25);
Mat2 matrix_kernel_error(Regime r, int beta, const WidomSystem& sys, const EquilibriumData& eq, const Lattice& lat,
                         double soft_c = 0.25);

struct ConvergenceRow {
  int n = 0;
  Mat2 err{};  // beta = 2 puts the scalar error in every slot
};

// Errors per n; t must reach degree max(ns) + m + 1.
std::vector<ConvergenceRow> convergence_table(Regime r, int beta, const Weight& w, const RecurrenceTable& t,
                                              const std::vector<int>& ns, const Lattice& lat,
                                              double soft_c = 0.25);

// err(n_k) / err(n_{k+1}) for one entry
std::vector<double> decay_ratios(const std::vector<ConvergenceRow>& rows, int i = 0, int j = 0);

}  // namespace rmt
