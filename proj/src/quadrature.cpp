#include <map>
#include "rmt/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

using std::abs;
using std::pow;

// Monic Jacobi recurrence for weight (1+x)^c on [-1,1], eigen-solved (Golub-Welsch).
Rule golub_welsch_power(int n, double c) {
  const double a = 0.0, b = c;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double s1 = 2.0 * kk + a + b;
      const double beta =
          4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, b + 1.0) / (b + 1.0);
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  return r;
}

// Jacobi P_n^{(0,c)} and its derivative at x.
template <class T>
void jacobi_eval(int n, const T& c, const T& x, T& pn, T& dpn) {
  const T a = 0;
  const T& b = c;
  T p0 = 1;
  T p1 = (a + 1) + (a + b + 2) * (x - 1) / 2;
  if (n == 0) {
    pn = p0;
    dpn = 0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const T s = 2 * k + a + b;
    const T a1 = 2 * k * (k + a + b) * (s - 2);
    const T a2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const T a3 = 2 * (k + a - 1) * (k + b - 1) * s;
    const T p2 = (a2 * p1 - a3 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  const T s = 2 * n + a + b;
  dpn = (n * ((a - b) - s * x) * p1 + 2 * (n + a) * (n + b) * p0) / (s * (1 - x * x));
}

template <class T>
void newton_polish(int n, const T& c, std::vector<T>& x, std::vector<T>& w, const T& tol) {
  for (auto& xi : x) {
    for (int it = 0; it < 40; ++it) {
      T p, dp;
      jacobi_eval<T>(n, c, xi, p, dp);
      const T dx = p / dp;
      xi -= dx;
      if (abs(dx) <= tol) break;
    }
  }
  T sum = 0;
  for (int i = 0; i < n; ++i) {
    T p, dp;
    jacobi_eval<T>(n, c, x[i], p, dp);
    w[i] = 1 / ((1 - x[i] * x[i]) * dp * dp);
    sum += w[i];
  }
  // (1+x)^c integrates to 2^{c+1}/(c+1) on [-1,1]
  const T total = pow(T(2), c + 1) / (c + 1);
  for (auto& wi : w) wi *= total / sum;
}

}  // namespace

MpPrecisionGuard::MpPrecisionGuard(int mantissa_bits) : saved_digits_(mpreal::default_precision()) {
  const auto digits10 = static_cast<unsigned>(std::ceil(mantissa_bits * std::log10(2.0)));
  mpreal::default_precision(digits10);
}

MpPrecisionGuard::~MpPrecisionGuard() { mpreal::default_precision(saved_digits_); }

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p1 = 0, dp = 0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      double p0 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 0.0;
    p1 = 1.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

Rule gauss_power(int n, double c) {
  if (!(c > -1.0)) throw DomainError("gauss_power: exponent must exceed -1");
  Rule r = golub_welsch_power(n, c);
  newton_polish<double>(n, c, r.x, r.w, 1e-15);
  // map (1+x)^c dx on [-1,1] to t^c dt on [0,1]: t = (1+x)/2
  const double scale = std::pow(0.5, c + 1.0);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (1.0 + r.x[i]);
    r.w[i] *= scale;
  }
  return r;
}

RuleMp gauss_legendre_mp(int n) {
  RuleMp r = gauss_power_mp(n, 0.0);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 2 * r.x[i] - 1;
    r.w[i] *= 2;
  }
  return r;
}

RuleMp gauss_power_mp(int n, double c) {
  if (!(c > -1.0)) throw DomainError("gauss_power_mp: exponent must exceed -1");
  const Rule seed = golub_welsch_power(n, c);
  RuleMp r;
  r.x.assign(seed.x.begin(), seed.x.end());
  r.w.resize(n);
  const mpreal cm = c;
  const mpreal tol = std::numeric_limits<mpreal>::epsilon() * 4;
  newton_polish<mpreal>(n, cm, r.x, r.w, tol);
  const mpreal scale = pow(mpreal(0.5), cm + 1);
  for (int i = 0; i < n; ++i) {
    r.x[i] = (1 + r.x[i]) / 2;
    r.w[i] *= scale;
  }
  return r;
}

Rule gauss_legendre_on(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.x[i] = c + h * r.x[i];
    r.w[i] *= h;
  }
  return r;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels,
                    int nodes) {
  // nested calls may use different node counts, so keep one rule per count
  static thread_local std::map<int, Rule> rules;
  auto it = rules.find(nodes);
  if (it == rules.end()) it = rules.emplace(nodes, gauss_legendre(nodes)).first;
  const Rule& cached = it->second;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < nodes; ++i) s += cached.w[i] * f(c + 0.5 * h * cached.x[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

std::vector<double> gl_integration_matrix(const Rule& gl) {
  const int n = static_cast<int>(gl.x.size());
  // P[k][i] = P_k(x_i)
  std::vector<std::vector<double>> P(n + 1, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    double p0 = 1.0, p1 = gl.x[i];
    P[0][i] = 1.0;
    if (n >= 1) P[1][i] = p1;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * gl.x[i] * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
      P[k + 1][i] = p2;
    }
  }
  std::vector<double> S(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      // int_{-1}^{t} P_k
      const double ik = (k == 0) ? gl.x[i] + 1.0 : (P[k + 1][i] - P[k - 1][i]) / (2.0 * k + 1.0);
      for (int j = 0; j < n; ++j)
        S[static_cast<size_t>(i) * n + j] += gl.w[j] * P[k][j] * (2.0 * k + 1.0) / 2.0 * ik;
    }
  }
  return S;
}

}  // namespace rmt
