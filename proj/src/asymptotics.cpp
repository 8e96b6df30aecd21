#include "rmt/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/special.hpp"
#include "rmt/widom.hpp"

namespace rmt {

namespace {
constexpr double kPi = std::numbers::pi;

double minus_one_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

void check_region(const EquilibriumData& eq, Region r, double x, const char* where) {
  if (!(x > 0.0)) throw_domain(where, "x must be positive");
  // a little slack so callers may evaluate right at the matching points
  const RegionConfig rc = RegionConfig::for_n(eq.n);
  const Region got = rc.region_of(x);
  if (got == r) return;
  const double tol = 1e-12;
  if (rc.region_of(x - tol) == r || rc.region_of(x + tol) == r) return;
  throw DomainError(std::string(where) + ": x lies in the " + region_name(got) + " region");
}

// cos eta_j and sin eta_j / (1-x)^{1/2}, continued analytically past x = 1
std::pair<double, double> eta_pair(double alpha, int j, double x) {
  const double a = 0.5 * (alpha + (j == 1 ? 1.0 : -1.0));
  if (x < 1.0) {
    const double e = a * std::acos(2.0 * x - 1.0);
    const double s = std::sqrt(1.0 - x);
    return {std::cos(e), s > 1e-8 ? std::sin(e) / s : 2.0 * a};
  }
  if (x - 1.0 < 1e-14) return {1.0, 2.0 * a};
  const double p = conformal_phi(x);
  const double pa = std::pow(p, a), pm = std::pow(p, -a);
  return {0.5 * (pa + pm), (pa - pm) / (2.0 * std::sqrt(x - 1.0))};
}

double outer_integral(const EquilibriumData& eq, double x) {
  return 0.5 * eq.n * sqrt_moment_outer(eq.h_coeffs, x);
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::bessel: return "bessel";
    case Region::bulk: return "bulk";
    case Region::airy: return "airy";
    case Region::exponential: return "exponential";
  }
  return "?";
}

Region parse_region(const std::string& s) {
  if (s == "bessel") return Region::bessel;
  if (s == "bulk") return Region::bulk;
  if (s == "airy") return Region::airy;
  if (s == "exponential") return Region::exponential;
  throw DomainError("unknown region '" + s + "'");
}

RegionConfig RegionConfig::for_n(int n) {
  if (n < 2) throw_domain("RegionConfig", "n must be >= 2");
  RegionConfig c;
  c.n = n;
  c.bessel_end = 1.0 / n;
  const double d = std::pow(double(n), c.kappa - 2.0 / 3.0);
  c.airy_lo = 1.0 - d;
  c.airy_hi = 1.0 + d;
  return c;
}

Region RegionConfig::region_of(double x) const {
  if (x <= bessel_end) return Region::bessel;
  if (x <= airy_lo) return Region::bulk;
  if (x <= airy_hi) return Region::airy;
  return Region::exponential;
}

std::pair<double, double> RegionConfig::interior(Region r, double keep) const {
  double a = 0.0, b = 0.0;
  switch (r) {
    case Region::bessel: a = 0.0; b = bessel_end; break;
    case Region::bulk: a = bessel_end; b = airy_lo; break;
    case Region::airy: a = airy_lo; b = airy_hi; break;
    case Region::exponential: {
      const double d = airy_hi - 1.0;
      return {1.0 + 1.2 * d, 1.0 + 2.0 * d};
    }
  }
  const double margin = 0.5 * (1.0 - keep) * (b - a);
  return {a + margin, b - margin};
}

double bessel_argument(const EquilibriumData& eq, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw_domain("bessel_argument", "x must lie in [0,1]");
  double s = 0.0;
  for (size_t k = 0; k < eq.h_coeffs.size(); ++k) s += eq.h_coeffs[k] * sqrt_moment_lower(static_cast<int>(k), x);
  return 0.5 * eq.n * s;
}

double f_tilde(const EquilibriumData& eq, double x) {
  const double b = 0.5 * bessel_argument(eq, x);
  return -b * b;
}

double f_airy(const EquilibriumData& eq, double x) {
  if (!(x > 0.0)) throw_domain("f_airy", "x must be positive");
  if (x == 1.0) return 0.0;
  if (x < 1.0) return -std::pow(1.5 * phase_integral(eq, x), 2.0 / 3.0);
  return std::pow(1.5 * outer_integral(eq, x), 2.0 / 3.0);
}

double phi_hat_leading(Region r, const EquilibriumData& eq, double x) {
  check_region(eq, r, x, "phi_hat_leading");
  const double a = eq.alpha;
  const int n = eq.n;
  switch (r) {
    case Region::bessel: {
      const double z = bessel_argument(eq, x);
      const double zeta = 0.5 * (a + 1.0) * std::acos(2.0 * x - 1.0) - 0.5 * kPi * a;
      const BesselPair j = special_bessel(a, z);
      const double pre = minus_one_pow(n) * std::sqrt(2.0) * std::sqrt(0.5 * z) /
                         (std::pow(x, 0.25) * std::pow(1.0 - x, 0.25));
      return pre * (std::sin(zeta) * j.j + std::cos(zeta) * j.jp);
    }
    case Region::bulk:
      return std::sqrt(2.0 / kPi) * std::cos(phase_F(eq, 1, x)) / (std::pow(x, 0.25) * std::pow(1.0 - x, 0.25));
    case Region::airy: {
      const double f = f_airy(eq, x);
      const double ratio = std::abs(x - 1.0) < 1e-12 ? eq.c_n * std::pow(double(n), 2.0 / 3.0)
                                                     : std::abs(f / (x - 1.0));
      const auto [ce, se] = eta_pair(a, 1, x);
      const AiryPair ai = special_airy(f);
      return std::sqrt(2.0) / std::pow(x, 0.25) *
             (ce * std::pow(ratio, 0.25) * ai.ai - se * std::pow(ratio, -0.25) * ai.aip);
    }
    case Region::exponential: {
      const double p = conformal_phi(x);
      return std::pow(p, 0.5 * (a + 1.0)) * std::exp(-outer_integral(eq, x)) /
             (std::sqrt(2.0 * kPi) * std::pow(x, 0.25) * std::pow(x - 1.0, 0.25));
    }
  }
  return 0.0;
}

double psi_hat_leading(int r, Region reg, const EquilibriumData& eq, double x) {
  if (r != 1 && r != 2) throw DomainError("psi_hat_leading: r must be 1 or 2");
  check_region(eq, reg, x, "psi_hat_leading");
  const double a = eq.alpha, ct = eq.tilde_c_n;
  const int n = eq.n;
  const double sgn_n = minus_one_pow(n);
  switch (reg) {
    case Region::bessel: {
      const double z = bessel_argument(eq, x);
      const double ac = std::acos(2.0 * x - 1.0);
      const double z1 = 0.5 * (a + 1.0) * ac - 0.5 * kPi * a, z2 = 0.5 * (a - 1.0) * ac - 0.5 * kPi * a;
      const double s1 = std::sin(z1), c1 = std::cos(z1), s2 = std::sin(z2), c2 = std::cos(z2);
      const BesselPair j = special_bessel(a, z);
      // (u, v) = [[1-a, -i(a+1)], [1, i]] [[sin z1, cos z1], [-i sin z2, -i cos z2]] (J, J')
      const double u = ((1.0 - a) * s1 - (a + 1.0) * s2) * j.j + ((1.0 - a) * c1 - (a + 1.0) * c2) * j.jp;
      const double v = (s1 + s2) * j.j + (c1 + c2) * j.jp;
      const double q = std::sqrt(std::sqrt(ct) * n);
      const double pre = std::sqrt(0.5 * z) / (std::sqrt(double(n)) * x * std::pow(1.0 - x, 0.25) * std::pow(x, 0.25));
      const double first = 0.25 * a * u / q, second = 0.5 * v * q;
      return pre * (r == 2 ? first + second : -first + second);
    }
    case Region::bulk:
      return sgn_n * std::pow(ct, 0.25) * std::cos(phase_G(eq, x)) /
             (std::sqrt(kPi) * std::pow(x, 0.75) * std::pow(1.0 - x, 0.25));
    case Region::airy:
      return sgn_n * std::pow(eq.c_n * ct, 0.25) * std::pow(double(n), 1.0 / 6.0) *
             airy_ai(eq.c_n * std::pow(double(n), 2.0 / 3.0) * (x - 1.0));
    case Region::exponential: {
      // bulk form continued past 1 and matched to the Airy decay; tends to the Airy-region form as x -> 1
      const double p = conformal_phi(x);
      const double f = f_airy(eq, x);
      return sgn_n * std::pow(ct, 0.25) * (std::pow(p, 0.5 * (a + 1.0)) + std::pow(p, 0.5 * (a - 1.0))) /
             (2.0 * std::pow(x, 1.25)) * std::pow(f / (x - 1.0), 0.25) * airy_ai(f);
    }
  }
  return 0.0;
}

LeadingOrderError leading_order_error(Region reg, const WidomSystem& sys, const RecurrenceTable& t,
                                      const Weight& w, const EquilibriumData& eq, int points) {
  if (points < 1) throw DomainError("leading_order_error: need at least one interval");
  const auto [lo, hi] = RegionConfig::for_n(eq.n).interior(reg);
  const double sb = std::sqrt(eq.beta_n);
  double e[3] = {0, 0, 0}, s[3] = {0, 0, 0};
  for (int i = 0; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double X = eq.beta_n * x;
    const double exact[3] = {sb * eval_phi(t, w, eq.n, X), sb * sys.psi1(X), sb * sys.psi2(X)};
    const double lead[3] = {phi_hat_leading(reg, eq, x), psi_hat_leading(1, reg, eq, x),
                            psi_hat_leading(2, reg, eq, x)};
    for (int k = 0; k < 3; ++k) {
      e[k] = std::max(e[k], std::abs(exact[k] - lead[k]));
      s[k] = std::max(s[k], std::abs(exact[k]));
    }
  }
  return {e[0] / s[0], e[1] / s[1], e[2] / s[2]};
}

}  // namespace rmt
