#include <map>
#include "rmt/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"

namespace rmt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConfluentRel = 1e-6;
constexpr double kBesselDerivBand = 0.1;
constexpr double kAiryTaylorBand = 0.1;
constexpr int kAiryTaylorTerms = 40;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

void check_positive(const char* where, double xi, double eta) {
  if (!(xi > 0.0) || !(eta > 0.0)) throw_domain(where, "arguments must be positive");
}

// Derivatives A_k = Ai^{(k)}(x), k = 0..K
std::array<double, kAiryTaylorTerms + 2> airy_derivatives(double x) {
  std::array<double, kAiryTaylorTerms + 2> A{};
  const AiryPair p = special_airy(x);
  A[0] = p.ai;
  A[1] = p.aip;
  A[2] = x * p.ai;
  for (int k = 1; k + 2 < static_cast<int>(A.size()); ++k) A[k + 2] = x * A[k] + k * A[k - 1];
  return A;
}

const Rule& power_rule(int n, double c) {
  static thread_local std::map<std::pair<int, double>, Rule> cache;
  auto it = cache.find({n, c});
  if (it == cache.end()) it = cache.emplace(std::make_pair(n, c), gauss_power(n, c)).first;
  return it->second;
}

}  // namespace

double kernel_bessel_ratio(double alpha, double xi, double eta) {
  const double a = std::sqrt(xi), b = std::sqrt(eta);
  const BesselPair ja = special_bessel(alpha, a), jb = special_bessel(alpha, b);
  return (ja.j * b * jb.jp - jb.j * a * ja.jp) / (2.0 * (xi - eta));
}

double kernel_bessel_diagonal(double alpha, double xi) {
  const double a = std::sqrt(xi);
  const double j = bessel_j(alpha, a);
  const double j1 = bessel_j(alpha + 1.0, a);
  const double jm = 2.0 * alpha / a * j - j1;
  return 0.25 * (j * j - j1 * jm);
}

double kernel_bessel(double alpha, double xi, double eta) {
  check_positive("kernel_bessel", xi, eta);
  if (std::abs(xi - eta) < kConfluentRel * std::max(xi, 1.0))
    return kernel_bessel_diagonal(alpha, 0.5 * (xi + eta));
  return kernel_bessel_ratio(alpha, xi, eta);
}

double kernel_bessel_deta(double alpha, double xi, double eta) {
  check_positive("kernel_bessel_deta", xi, eta);
  const double d = xi - eta;
  if (std::abs(d) >= kBesselDerivBand * std::max(1.0, xi)) {
    const double a = std::sqrt(xi), b = std::sqrt(eta);
    const BesselPair ja = special_bessel(alpha, a), jb = special_bessel(alpha, b);
    const double g_xi = ja.j, h_xi = a * ja.jp;
    const double g_eta = jb.j, h_eta = b * jb.jp;
    const double dg = h_eta / (2.0 * eta);
    const double dh = 0.5 * (alpha * alpha / eta - 1.0) * g_eta;
    const double N = g_xi * h_eta - h_xi * g_eta;
    const double dN = g_xi * dh - h_xi * dg;
    return dN / (2.0 * d) + N / (2.0 * d * d);
  }
  // K_J = (1/2) int_0^1 u J(ua) J(ub) du, differentiated under the integral
  const double a = std::sqrt(xi), b = std::sqrt(eta);
  const int nodes = 40 + 2 * static_cast<int>(std::ceil(std::max(a, b)));
  const Rule& r = power_rule(nodes, 2.0 * alpha + 1.0);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) {
    const double u = r.x[i];
    s += r.w[i] * bessel_j_scaled(alpha, u * a) * bessel_jp_scaled(alpha, u * b);
  }
  return s / (4.0 * b) * std::pow(0.5 * a, alpha) * std::pow(0.5 * b, alpha - 1.0);
}

double kernel_bessel_integral(double alpha, double xi, double eta) {
  check_positive("kernel_bessel_integral", xi, eta);
  // s = xi v^2 exposes the v^{alpha+1} behaviour at the origin
  const int nodes = 30 + 2 * static_cast<int>(std::ceil(std::sqrt(xi)));
  const Rule& r = power_rule(nodes, alpha + 1.0);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) {
    const double v = r.x[i];
    s += r.w[i] * kernel_bessel(alpha, xi * v * v, eta) / std::pow(v, alpha);
  }
  return 2.0 * xi * s;
}

double kernel_airy_ratio(double xi, double eta) {
  const AiryPair a = special_airy(xi), b = special_airy(eta);
  return (a.ai * b.aip - b.ai * a.aip) / (xi - eta);
}

double kernel_airy_diagonal(double xi) {
  const AiryPair a = special_airy(xi);
  return a.aip * a.aip - xi * a.ai * a.ai;
}

double kernel_airy(double xi, double eta) {
  const double d = eta - xi;
  if (d == 0.0) return kernel_airy_diagonal(xi);
  if (std::abs(d) >= kAiryTaylorBand) return kernel_airy_ratio(xi, eta);
  const auto A = airy_derivatives(xi);
  // K = -sum_{k>=1} F^{(k)} d^{k-1}/k!, F^{(k)} = Ai A_{k+1} - A_k Ai'
  double s = 0.0, dk = 1.0, fact = 1.0;
  for (int k = 1; k <= kAiryTaylorTerms; ++k) {
    fact *= k;
    const double F = A[0] * A[k + 1] - A[k] * A[1];
    s += F * dk / fact;
    dk *= d;
  }
  return -s;
}

double kernel_airy_deta(double xi, double eta) {
  const double d = eta - xi;
  if (std::abs(d) >= kAiryTaylorBand) {
    const AiryPair a = special_airy(xi), b = special_airy(eta);
    const double N = a.ai * b.aip - b.ai * a.aip;
    const double dN = a.ai * eta * b.ai - b.aip * a.aip;
    const double e = xi - eta;
    return dN / e + N / (e * e);
  }
  const auto A = airy_derivatives(xi);
  double s = 0.0, dk = 1.0, fact = 1.0;
  for (int k = 2; k <= kAiryTaylorTerms; ++k) {
    fact *= k;
    const double F = A[0] * A[k + 1] - A[k] * A[1];
    s += F * (k - 1) * dk / fact;
    dk *= d;
  }
  return -s;
}

double kernel_airy_tail_integral(double xi, double eta) {
  const double lo = std::max(xi, 0.0);
  const double zeta = 2.0 / 3.0 * lo * std::sqrt(lo);
  const double upper = std::max(std::pow(1.5 * (zeta + 40.0), 2.0 / 3.0), xi + 1.0);
  const int panels = static_cast<int>(std::ceil(upper - xi));
  return integrate_gl([eta](double s) { return kernel_airy(s, eta); }, xi, upper, panels, 16);
}

double kernel_sine(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - kPi * kPi * t * t / 6.0;
  return std::sin(kPi * t) / (kPi * t);
}

double kernel_sine_deriv(double t) {
  const double x = kPi * t;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return kPi * (-x / 3.0 + x * x2 / 30.0 - x * x2 * x2 / 840.0);
  }
  return kPi * (x * std::cos(x) - std::sin(x)) / (x * x);
}

double kernel_sine_integral(double t) { return sine_integral(kPi * t) / kPi; }

double bessel_tail_combination(double alpha, double eta) {
  const double r = std::sqrt(eta);
  double t = 1.0 - bessel_integral(alpha + 1.0, r);
  if (alpha > 0.0) t -= 2.0 - 2.0 * alpha * bessel_integral_over_s(alpha, r);
  return t;
}

namespace {

// J_{a+1}(sqrt x)/sqrt x - (2a/x) J_a(sqrt x)
double hard_P(double alpha, double x) {
  const double r = std::sqrt(x);
  return bessel_j(alpha + 1.0, r) / r - 2.0 * alpha / x * bessel_j(alpha, r);
}

double hard_J1(double alpha, double x) {
  const double r = std::sqrt(x);
  return bessel_j(alpha + 1.0, r) / r;
}

// int_0^{sqrt x} (J_{a+1} - (2a/s) J_a) ds
double hard_Pint(double alpha, double x) {
  const double r = std::sqrt(x);
  double v = bessel_integral(alpha + 1.0, r);
  if (alpha > 0.0) v -= 2.0 * alpha * bessel_integral_over_s(alpha, r);
  return v;
}

void check_beta14(const char* where, int beta) {
  if (beta != 1 && beta != 4) throw_domain(where, "beta must be 1 or 4");
}

}  // namespace

Mat2 kernel_hard_limit(int beta, double alpha, double xi, double eta) {
  check_beta14("kernel_hard_limit", beta);
  check_positive("kernel_hard_limit", xi, eta);
  Mat2 k{};
  const double q_xi = bessel_integral(alpha + 1.0, std::sqrt(xi));
  const double q_eta = bessel_integral(alpha + 1.0, std::sqrt(eta));
  if (beta == 4) {
    k[0][0] = 0.5 * (kernel_bessel(alpha, xi, eta) + 0.25 * hard_P(alpha, xi) * q_eta);
    k[1][1] = 0.5 * (kernel_bessel(alpha, eta, xi) + 0.25 * hard_P(alpha, eta) * q_xi);
    k[0][1] = 0.5 * (-kernel_bessel_deta(alpha, xi, eta) - 0.125 * hard_P(alpha, xi) * hard_J1(alpha, eta));
    k[1][0] = 0.5 * (kernel_bessel_integral(alpha, xi, eta) + 0.5 * hard_Pint(alpha, xi) * q_eta);
    return k;
  }
  const double t_eta = bessel_tail_combination(alpha, eta);
  const double t_xi = bessel_tail_combination(alpha, xi);
  k[0][0] = kernel_bessel(alpha, xi, eta) - 0.25 * hard_J1(alpha, xi) * t_eta;
  k[1][1] = kernel_bessel(alpha, eta, xi) - 0.25 * hard_J1(alpha, eta) * t_xi;
  k[0][1] = -kernel_bessel_deta(alpha, xi, eta) - 0.125 * hard_J1(alpha, xi) * hard_P(alpha, eta);
  const double between = kernel_bessel_integral(alpha, eta, eta) - kernel_bessel_integral(alpha, xi, eta);
  k[1][0] = -between + 0.5 * (q_eta - q_xi) * t_eta - 0.5 * sgn(xi - eta);
  return k;
}

Mat2 kernel_soft_limit(int beta, double xi, double eta) {
  check_beta14("kernel_soft_limit", beta);
  Mat2 k{};
  const double ai_xi = airy_ai(xi), ai_eta = airy_ai(eta);
  const double t_xi = airy_tail(xi), t_eta = airy_tail(eta);
  if (beta == 4) {
    k[0][0] = 0.5 * (kernel_airy(xi, eta) - 0.5 * ai_xi * t_eta);
    k[1][1] = 0.5 * (kernel_airy(eta, xi) - 0.5 * ai_eta * t_xi);
    k[0][1] = 0.5 * (-kernel_airy_deta(xi, eta) - 0.5 * ai_xi * ai_eta);
    k[1][0] = 0.5 * (-kernel_airy_tail_integral(xi, eta) + 0.5 * t_xi * t_eta);
    return k;
  }
  k[0][0] = kernel_airy(xi, eta) + 0.5 * ai_xi * (1.0 - t_eta);
  k[1][1] = kernel_airy(eta, xi) + 0.5 * ai_eta * (1.0 - t_xi);
  k[0][1] = -kernel_airy_deta(xi, eta) - 0.5 * ai_xi * ai_eta;
  k[1][0] = -kernel_airy_tail_integral(xi, eta) - 0.5 * (t_xi - t_eta) + 0.5 * t_xi * t_eta -
            0.5 * sgn(xi - eta);
  return k;
}

Mat2 kernel_bulk_limit(int beta, double xi, double eta) {
  check_beta14("kernel_bulk_limit", beta);
  const double d = xi - eta;
  Mat2 k{};
  if (beta == 4) {
    k[0][0] = kernel_sine(2.0 * d);
    k[0][1] = 2.0 * kernel_sine_deriv(2.0 * d);
    k[1][0] = 0.5 * kernel_sine_integral(2.0 * d);
    k[1][1] = kernel_sine(-2.0 * d);
    return k;
  }
  k[0][0] = kernel_sine(d);
  k[0][1] = kernel_sine_deriv(d);
  k[1][0] = kernel_sine_integral(d) - 0.5 * sgn(d);
  k[1][1] = kernel_sine(-d);
  return k;
}

Regime parse_regime(const std::string& s) {
  if (s == "hard") return Regime::hard;
  if (s == "soft") return Regime::soft;
  if (s == "bulk") return Regime::bulk;
  throw DomainError("unknown regime '" + s + "' (expected hard, soft or bulk)");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::hard: return "hard";
    case Regime::soft: return "soft";
    case Regime::bulk: return "bulk";
  }
  return "?";
}

double ScalingConstants::scale_sq(int beta) const {
  switch (regime) {
    case Regime::hard: return 1.0 / nu_sq_inv;
    case Regime::soft: return 1.0 / lambda_sq_inv;
    case Regime::bulk: return beta == 4 ? q_n4_sq : q_n_sq;
  }
  return 1.0;
}

double ScalingConstants::map(double xi, int beta) const {
  switch (regime) {
    case Regime::hard: return xi * nu_sq_inv;
    case Regime::soft: return beta_n + xi * lambda_sq_inv;
    case Regime::bulk: return beta_n * x_bulk + xi / scale_sq(beta);
  }
  return 0.0;
}

ScalingConstants scalings(const EquilibriumData& eq, Regime regime, double x_bulk) {
  ScalingConstants s;
  s.regime = regime;
  s.beta_n = eq.beta_n;
  const double n = eq.n;
  s.nu_sq_inv = eq.beta_n / (4.0 * eq.tilde_c_n * n * n);
  s.lambda_sq_inv = eq.beta_n / (eq.c_n * std::pow(n, 2.0 / 3.0));
  if (regime == Regime::bulk) {
    if (!(x_bulk > 0.0 && x_bulk < 1.0)) throw_domain("scalings", "bulk point must lie in (0,1)");
    s.x_bulk = x_bulk;
    s.q_n_sq = n * omega_n(eq, x_bulk) / eq.beta_n;
    s.q_n4_sq = 0.5 * s.q_n_sq;
  }
  return s;
}

Mat2 error_weights(Regime regime, int beta, double alpha, double xi, double eta, double c) {
  Mat2 w{{{1.0, 1.0}, {1.0, 1.0}}};
  if (regime == Regime::hard) {
    const double a = std::pow(xi, 0.5 * alpha), b = std::pow(eta, 0.5 * alpha);
    if (beta == 2) {
      w[0][0] = w[0][1] = w[1][0] = w[1][1] = a * b;
    } else if (beta == 4) {
      w = {{{a * b / xi, a * b / (xi * eta)}, {a * b, a * b / eta}}};
    } else {
      w = {{{a, a * b / eta}, {1.0, b}}};
    }
  } else if (regime == Regime::soft) {
    const double ex = std::exp(-c * xi), ey = std::exp(-c * eta);
    if (beta == 1) {
      w = {{{ex, ex * ey}, {std::exp(-c * std::min(xi, eta)), ey}}};
    } else {
      w[0][0] = w[0][1] = w[1][0] = w[1][1] = ex * ey;
    }
  }
  return w;
}

}  // namespace rmt
