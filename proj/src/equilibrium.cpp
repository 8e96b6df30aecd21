#include "rmt/equilibrium.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {
constexpr double kPi = std::numbers::pi;

// sum_j j q_j A_j beta^j and its beta-derivative
std::pair<double, double> mrs_lhs(const Weight& w, double beta) {
  double f = 0.0, df = 0.0;
  const auto& q = w.v_coeffs();
  for (int j = 1; j <= w.m(); ++j) {
    const double c = j * q[j] * central_binomial_ratio(j);
    f += c * std::pow(beta, j);
    df += c * j * std::pow(beta, j - 1);
  }
  return {f, df};
}

// sin^p integral on [0, U] by the reduction formula
double sin_power_integral(int p, double U) {
  const double s = std::sin(U), c = std::cos(U);
  double lo = (p % 2 == 0) ? U : 1.0 - c;
  for (int q = (p % 2 == 0) ? 2 : 3; q <= p; q += 2)
    lo = -std::pow(s, q - 1) * c / q + (q - 1.0) / q * lo;
  return lo;
}

double total_moment(int k) { return kPi * central_binomial_ratio(k) / (2.0 * (k + 1)); }

// int_0^x s^{k-1/2}(1-s)^{1/2} ds, series in x
double lower_series(int k, double x) {
  double binom = 1.0, sum = 0.0, xp = std::pow(x, k + 0.5);
  for (int i = 0; i < 200; ++i) {
    const double term = binom * xp / (k + i + 0.5);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    binom *= -(0.5 - i) / (i + 1.0);
    xp *= x;
  }
  return sum;
}

// int_0^r (1-rho)^{k-1/2} rho^{1/2} d rho, series in r
double upper_series(int k, double r) {
  double binom = 1.0, sum = 0.0, rp = std::pow(r, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double term = binom * rp / (i + 1.5);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    binom *= -(k - 0.5 - i) / (i + 1.0);
    rp *= r;
  }
  return sum;
}

}  // namespace

double central_binomial_ratio(int j) {
  double a = 1.0;
  for (int i = 1; i <= j; ++i) a *= (2.0 * i - 1.0) / (2.0 * i);
  return a;
}

double eval_poly(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

double EquilibriumData::h(double x) const { return eval_poly(h_coeffs, x); }

double mrs_number(const Weight& w, int n) {
  if (n < 1) throw DomainError("mrs_number: n must be >= 1");
  const double target = 2.0 * n;
  double hi = 1.0;
  while (mrs_lhs(w, hi).first < target) {
    hi *= 2.0;
    if (hi > 1e300) throw NoRootError("mrs_number: no bracket found");
  }
  // monotonicity on the bracket
  constexpr int kSamples = 256;
  double prev = mrs_lhs(w, 0.0).first;
  for (int i = 1; i <= kSamples; ++i) {
    const double v = mrs_lhs(w, hi * i / kSamples).first;
    if (!(v > prev)) throw NoRootError("mrs_number: defining relation is not monotone on [0, beta]");
    prev = v;
  }
  double lo = 0.0, b = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const auto [f, df] = mrs_lhs(w, b);
    const double g = f - target;
    if (g > 0) hi = b; else lo = b;
    double nb = b - g / df;
    if (!(nb > lo && nb < hi)) nb = 0.5 * (lo + hi);
    if (std::abs(nb - b) <= 1e-15 * nb) {
      b = nb;
      break;
    }
    b = nb;
  }
  return b;
}

double mrs_defining_integral(const Weight& w, double beta) {
  // x = beta sin^2(phi): sqrt(x/(beta-x)) dx = 2 beta sin^2(phi) dphi
  auto f = [&](double phi) {
    const double s = std::sin(phi);
    return w.V_prime(beta * s * s) * 2.0 * beta * s * s;
  };
  return integrate_gl(f, 0.0, kPi / 2, 8, 32) / (2.0 * kPi);
}

std::vector<double> h_polynomial(const Weight& w, int n, double beta_n) {
  const int m = w.m();
  const auto& q = w.v_coeffs();
  std::vector<double> h(m, 0.0);
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    for (int j = k + 1; j <= m; ++j) s += j * q[j] * std::pow(beta_n, j) * central_binomial_ratio(j - 1 - k);
    h[k] = s / n;
  }
  const double norm = sqrt_moment_total(h);
  if (std::abs(norm / (2.0 * kPi) - 1.0) > 1e-8)
    throw ValidationError("h_polynomial: normalization to 2 pi fails");
  return h;
}

EquilibriumData equilibrium(const Weight& w, int n) {
  EquilibriumData e;
  e.n = n;
  e.alpha = w.alpha();
  e.m = w.m();
  e.beta_n = mrs_number(w, n);
  e.h_coeffs = h_polynomial(w, n, e.beta_n);
  e.c_n = std::pow(0.5 * e.h(1.0), 2.0 / 3.0);
  const double h0 = 0.5 * e.h(0.0);
  e.tilde_c_n = h0 * h0;
  return e;
}

double omega_n(const EquilibriumData& eq, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw_domain("omega_n", "x must lie in (0,1]");
  return std::sqrt((1.0 - x) / x) * eq.h(x) / (2.0 * kPi);
}

std::pair<double, double> edge_constants(const EquilibriumData& eq) { return {eq.c_n, eq.tilde_c_n}; }

std::vector<double> limiting_h(int m) {
  std::vector<double> h(m);
  const double am = central_binomial_ratio(m);
  for (int k = 0; k < m; ++k) h[k] = 2.0 * central_binomial_ratio(m - 1 - k) / am;
  return h;
}

double sqrt_moment_lower(int k, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw_domain("sqrt_moment_lower", "x must lie in [0,1]");
  if (x <= 0.25) return lower_series(k, x);
  if (x >= 0.75) return total_moment(k) - upper_series(k, 1.0 - x);
  const double U = std::asin(std::sqrt(x));
  return 2.0 * (sin_power_integral(2 * k, U) - sin_power_integral(2 * k + 2, U));
}

double sqrt_moment_upper(int k, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw_domain("sqrt_moment_upper", "x must lie in [0,1]");
  if (x >= 0.75) return upper_series(k, 1.0 - x);
  return total_moment(k) - sqrt_moment_lower(k, x);
}

double sqrt_moment_total(const std::vector<double>& p) {
  double s = 0.0;
  for (size_t k = 0; k < p.size(); ++k) s += p[k] * total_moment(static_cast<int>(k));
  return s;
}

double sqrt_moment_outer(const std::vector<double>& p, double x) {
  if (!(x >= 1.0)) throw_domain("sqrt_moment_outer", "x must be >= 1");
  if (x == 1.0) return 0.0;
  // s = cosh^2 u: sqrt((s-1)/s) ds = 2 sinh^2 u cosh u ... du
  auto f = [&](double u) {
    const double ch = std::cosh(u), sh = std::sinh(u);
    return 2.0 * sh * sh * eval_poly(p, ch * ch);
  };
  const double U = std::acosh(std::sqrt(x));
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, U, 15, 1e-14);
}

double phase_integral(const EquilibriumData& eq, double x) {
  double s = 0.0;
  for (size_t k = 0; k < eq.h_coeffs.size(); ++k) s += eq.h_coeffs[k] * sqrt_moment_upper(static_cast<int>(k), x);
  return 0.5 * eq.n * s;
}

double phase_F(const EquilibriumData& eq, int j, double x) {
  if (!(x > 0.0 && x < 1.0)) throw_domain("phase_F", "x must lie in (0,1)");
  if (j != 1 && j != 2) throw DomainError("phase_F: j must be 1 or 2");
  const double sign = (j == 1) ? 1.0 : -1.0;
  const double eta = 0.5 * (eq.alpha + sign) * std::acos(2.0 * x - 1.0);
  return phase_integral(eq, x) + eta - kPi / 4;
}

double phase_G(const EquilibriumData& eq, double x) {
  if (!(x > 0.0 && x < 1.0)) throw_domain("phase_G", "x must lie in (0,1)");
  return phase_integral(eq, x) + 0.5 * eq.alpha * std::acos(2.0 * x - 1.0) - kPi / 4;
}

double theta(int mdeg, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw_domain("theta", "x must lie in [0,1]");
  const auto h = limiting_h(mdeg);
  double s = 0.0;
  for (int k = 0; k < mdeg; ++k) s += h[k] * sqrt_moment_lower(k, x);
  return 0.5 * s;
}

double theta_prime(int mdeg, double x) {
  return 0.5 * std::sqrt((1.0 - x) / x) * eval_poly(limiting_h(mdeg), x);
}

double check_theta_ode(int mdeg, const std::vector<double>& grid) {
  double r = 0.0;
  for (double x : grid) {
    const double res = theta(mdeg, x) - x * theta_prime(mdeg, x) / mdeg - kPi + std::acos(2.0 * x - 1.0);
    r = std::max(r, std::abs(res));
  }
  return r;
}

double conformal_phi(double x) {
  if (!(x > 1.0)) throw_domain("conformal_phi", "x must exceed 1");
  return 2.0 * (x - 0.5) + 2.0 * std::sqrt(x) * std::sqrt(x - 1.0);
}

void to_json(nlohmann::json& j, const EquilibriumData& e) {
  j = nlohmann::json{{"n", e.n},           {"alpha", e.alpha}, {"m", e.m},
                     {"beta_n", e.beta_n}, {"h_coeffs", e.h_coeffs},
                     {"c_n", e.c_n},       {"tilde_c_n", e.tilde_c_n}};
}

}  // namespace rmt
