#pragma once

#include <string>
#include <vector>

#include "rmt/equilibrium.hpp"
#include "rmt/orthopoly.hpp"

namespace rmt {

class WidomSystem;

enum class Region { bessel, bulk, airy, exponential };

const char* region_name(Region r);
Region parse_region(const std::string& s);

struct RegionConfig {
  double kappa = 1.0 / 12.0;
  int n = 0;
  double bessel_end = 0.0;  // 1/n
  double airy_lo = 0.0;     // 1 - n^{kappa-2/3}
  double airy_hi = 0.0;     // 1 + n^{kappa-2/3}

  static RegionConfig for_n(int n);
  // Boundary points belong to the region on their left.
  Region region_of(double x) const;
  // Inner part of a region used for comparisons; the exponential region is unbounded,
  // so its window is [1 + 1.2 d, 1 + 2 d] with d = n^{kappa-2/3}.
  std::pair<double, double> interior(Region r, double keep = 0.6) const;
};

// 2(-f~_n(x))^{1/2}, i.e. (n/2) int_0^x sqrt((1-s)/s) h_n(s) ds, 0 <= x <= 1.
double bessel_argument(const EquilibriumData& eq, double x);
double f_tilde(const EquilibriumData& eq, double x);
// f_n(x), defined on (0, inf) through the phase integrals on either side of 1.
double f_airy(const EquilibriumData& eq, double x);

double phi_hat_leading(Region r, const EquilibriumData& eq, double x);
// r in {1, 2}; n even.
double psi_hat_leading(int r, Region reg, const EquilibriumData& eq, double x);

struct LeadingOrderError {
  double phi = 0.0, psi1 = 0.0, psi2 = 0.0;
};

// sup |exact - leading| / sup |exact| over points + 1 equispaced abscissae of the region interior
LeadingOrderError leading_order_error(Region reg, const WidomSystem& sys, const RecurrenceTable& t,
                                      const Weight& w, const EquilibriumData& eq, int points = 200);

}  // namespace rmt
