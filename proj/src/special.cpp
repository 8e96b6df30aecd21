#include "rmt/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesRadius = 8.0;
constexpr double kHankelRadius = 60.0;

double bessel_series_scaled(double nu, double z) {
  // sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)), times Gamma(nu+1)^{-1} folded into the first term
  const double q = -0.25 * z * z;
  double term = std::exp(-std::lgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 300; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_deriv_series_scaled(double nu, double z) {
  // J'_nu(z) = sum_k (-1)^k (nu+2k) (z/2)^{nu+2k-1} / (2 k! Gamma(nu+k+1))
  const double q = -0.25 * z * z;
  double base = std::exp(-std::lgamma(nu + 1.0));
  double sum = 0.5 * nu * base;
  for (int k = 1; k < 300; ++k) {
    base *= q / (k * (nu + k));
    const double term = 0.5 * (nu + 2.0 * k) * base;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

// J_nu and J_{nu+1} by backward recurrence normalized with
// (x/2)^nu / Gamma(nu+1) = sum_k c_k J_{nu+2k}(x).
std::pair<double, double> bessel_miller(double nu, double x) {
  int N = static_cast<int>(x + 30.0 + 3.0 * std::sqrt(x));
  if (N % 2) ++N;
  std::vector<double> f(N + 2, 0.0);
  f[N + 1] = 0.0;
  f[N] = 1e-280;
  for (int k = N; k >= 1; --k) {
    f[k - 1] = 2.0 * (nu + k) / x * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int j = k - 1; j <= N + 1; ++j) f[j] *= 1e-250;
    }
  }
  double norm = f[0];
  double g = 1.0;  // Gamma(nu+k)/(Gamma(nu+1) k!) for k >= 1
  for (int k = 1; 2 * k <= N; ++k) {
    if (k >= 2) g *= (nu + k - 1.0) / k;
    norm += (nu + 2.0 * k) * g * f[2 * k];
  }
  const double lhs = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  return {f[0] * lhs / norm, f[1] * lhs / norm};
}

double bessel_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0, term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    switch (k % 4) {
      case 0: P += term; break;
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double w = x - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

// ---- Airy ----

constexpr double kAi0 = 0.355028053887817239260063186004;
constexpr double kAip0 = -0.258819403792806798405183560189;

// Taylor expansion of a solution of y'' = x y about x0, evaluated at x0 + h.
AiryPair airy_taylor(double x0, double y, double yp, double h) {
  std::array<double, 64> a{};
  a[0] = y;
  a[1] = yp;
  a[2] = 0.5 * x0 * y;
  double val = a[0] + a[1] * h + a[2] * h * h;
  double der = a[1] + 2.0 * a[2] * h;
  double hp = h * h;
  for (int k = 1; k + 2 < 64; ++k) {
    a[k + 2] = (x0 * a[k] + a[k - 1]) / ((k + 2.0) * (k + 1.0));
    der += (k + 2.0) * a[k + 2] * hp;
    hp *= h;
    val += a[k + 2] * hp;
  }
  return {val, der};
}

constexpr double kAnchorStep = 0.25;
constexpr double kAnchorMin = -12.5;

struct AiryAnchors {
  std::vector<AiryPair> v;  // anchors at 0, -step, -2 step, ...
  AiryAnchors() {
    AiryPair cur{kAi0, kAip0};
    v.push_back(cur);
    const int n = static_cast<int>(-kAnchorMin / kAnchorStep) + 1;
    for (int i = 1; i <= n; ++i) {
      // substeps keep the truncation error at rounding level
      double x0 = -(i - 1) * kAnchorStep;
      for (int s = 0; s < 5; ++s) {
        cur = airy_taylor(x0, cur.ai, cur.aip, -kAnchorStep / 5);
        x0 -= kAnchorStep / 5;
      }
      v.push_back(cur);
    }
  }
};

const AiryAnchors& anchors() {
  static const AiryAnchors a;
  return a;
}

AiryPair airy_negative_asymptotic(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  // u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)), v_k = -(6k+1)/(6k-1) u_k
  double P = 0, Q = 0, R = 0, S = 0;
  double u = 1.0, zp = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
      zp *= zeta;
    }
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    const double tu = u / zp, tv = v / zp;
    if (k > 2 && std::abs(tu) < 1e-18) break;
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      P += sgn * tu;
      R += sgn * tv;
    } else {
      Q += sgn * tu;
      S += sgn * tv;
    }
  }
  const double ph = zeta - 0.25 * kPi;
  const double z4 = std::pow(z, 0.25);
  const double ai = (std::cos(ph) * P + std::sin(ph) * Q) / (std::sqrt(kPi) * z4);
  const double aip = z4 / std::sqrt(kPi) * (std::sin(ph) * R - std::cos(ph) * S);
  return {ai, aip};
}

// e^{-zeta}/pi int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt for x > 0
AiryPair airy_positive_integral(double x) {
  const double sx = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sx;
  const double T = std::sqrt(42.0 / sx);
  static thread_local Rule gl = gauss_legendre(24);
  const int panels = 4 + static_cast<int>(T * T * T / 3.0 / kPi);
  const double h = T / panels;
  double i0 = 0.0, i2 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * h;
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double t = c + 0.5 * h * gl.x[i];
      const double e = std::exp(-sx * t * t) * std::cos(t * t * t / 3.0) * 0.5 * h * gl.w[i];
      i0 += e;
      i2 += t * t * e;
    }
  }
  const double pre = std::exp(-zeta) / kPi;
  const double ai = pre * i0;
  const double aip = -sx * ai - pre * i2 / (2.0 * sx);
  return {ai, aip};
}

}  // namespace

double bessel_j_scaled(double nu, double z) {
  if (z < kSeriesRadius) return bessel_series_scaled(nu, z);
  return bessel_j(nu, z) / std::pow(0.5 * z, nu);
}

double bessel_jp_scaled(double nu, double z) {
  if (z < kSeriesRadius) return bessel_deriv_series_scaled(nu, z);
  return special_bessel(nu, z).jp / std::pow(0.5 * z, nu - 1.0);
}

BesselPair special_bessel(double nu, double x) {
  if (nu < 0.0) throw DomainError("special_bessel: nu must be >= 0");
  if (x < 0.0) throw DomainError("special_bessel: x must be >= 0");
  if (x == 0.0) {
    const double j = (nu == 0.0) ? 1.0 : 0.0;
    double jp = 0.0;
    if (nu == 1.0) jp = 0.5;
    else if (nu > 0.0 && nu < 1.0) jp = std::numeric_limits<double>::infinity();
    return {j, jp};
  }
  if (x < kSeriesRadius) {
    const double s = std::pow(0.5 * x, nu);
    const double j = s * bessel_series_scaled(nu, x);
    const double jp = std::pow(0.5 * x, nu - 1.0) * bessel_deriv_series_scaled(nu, x);
    return {j, jp};
  }
  if (x > kHankelRadius + nu * nu) {
    const double j = bessel_hankel(nu, x);
    const double j1 = bessel_hankel(nu + 1.0, x);
    return {j, nu / x * j - j1};
  }
  const auto [j, j1] = bessel_miller(nu, x);
  return {j, nu / x * j - j1};
}

double bessel_j(double nu, double x) { return special_bessel(nu, x).j; }

double bessel_integral(double mu, double a) {
  if (!(mu > -1.0)) throw DomainError("bessel_integral: mu must exceed -1");
  if (a <= 0.0) return 0.0;
  const double split = std::min(a, 12.0);
  // termwise integral of the power series on [0, split]
  const double q = -0.25 * split * split;
  double base = std::exp((mu + 1.0) * std::log(split) - mu * std::log(2.0) - std::lgamma(mu + 1.0));
  double sum = base / (mu + 1.0);
  for (int k = 1; k < 400; ++k) {
    base *= q / (k * (mu + k));
    const double term = base / (mu + 2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  if (a > split) {
    const int panels = static_cast<int>(std::ceil((a - split) / 2.0));
    sum += integrate_gl([mu](double s) { return bessel_j(mu, s); }, split, a, panels, 20);
  }
  return sum;
}

double bessel_integral_over_s(double nu, double a) {
  if (!(nu > 0.0)) throw DomainError("bessel_integral_over_s: nu must be positive");
  if (a <= 0.0) return 0.0;
  const double split = std::min(a, 12.0);
  const double q = -0.25 * split * split;
  double base = std::exp(nu * std::log(0.5 * split) - std::lgamma(nu + 1.0));
  double sum = base / nu;
  for (int k = 1; k < 400; ++k) {
    base *= q / (k * (nu + k));
    const double term = base / (nu + 2.0 * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  if (a > split) {
    const int panels = static_cast<int>(std::ceil((a - split) / 2.0));
    sum += integrate_gl([nu](double s) { return bessel_j(nu, s) / s; }, split, a, panels, 20);
  }
  return sum;
}

AiryPair special_airy(double x) {
  if (x >= 1.0) return airy_positive_integral(x);
  if (x >= 0.0) return airy_taylor(0.0, kAi0, kAip0, x);
  if (x < kAnchorMin) return airy_negative_asymptotic(x);
  const auto& A = anchors();
  const int i = static_cast<int>(std::lround(-x / kAnchorStep));
  const double x0 = -i * kAnchorStep;
  return airy_taylor(x0, A.v[i].ai, A.v[i].aip, x - x0);
}

double airy_ai(double x) { return special_airy(x).ai; }

double airy_tail(double x) {
  if (x < 0.0) {
    const int panels = static_cast<int>(std::ceil(-x / 0.5));
    return 1.0 / 3.0 + integrate_gl(airy_ai, x, 0.0, panels, 20);
  }
  const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
  const double upper = std::pow(1.5 * (zeta + 40.0), 2.0 / 3.0);
  const int panels = static_cast<int>(std::ceil((upper - x) / 0.75));
  return integrate_gl(airy_ai, x, upper, panels, 20);
}

double airy_head(double x) { return 1.0 - airy_tail(x); }

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  const int panels = 1 + static_cast<int>(std::abs(x) / 3.0);
  return integrate_gl(sinc, 0.0, x, panels, 20);
}

}  // namespace rmt
