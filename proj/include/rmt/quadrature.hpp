#pragma once

#include <functional>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace rmt {

using mpreal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

// Sets the working precision of mpreal for the lifetime of the guard.
class MpPrecisionGuard {
 public:
  explicit MpPrecisionGuard(int mantissa_bits);
  ~MpPrecisionGuard();
  MpPrecisionGuard(const MpPrecisionGuard&) = delete;
  MpPrecisionGuard& operator=(const MpPrecisionGuard&) = delete;

 private:
  unsigned saved_digits_;
};

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

struct RuleMp {
  std::vector<mpreal> x;
  std::vector<mpreal> w;
};

// Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

// Gauss rule for int_0^1 t^c f(t) dt, c > -1.
Rule gauss_power(int n, double c);

// Same rules at the current mpreal precision (Newton-polished).
RuleMp gauss_legendre_mp(int n);
RuleMp gauss_power_mp(int n, double c);

// Gauss-Legendre rule mapped to [a, b].
Rule gauss_legendre_on(int n, double a, double b);

// Composite Gauss-Legendre integral of f over [a, b] with `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 1,
                    int nodes = 20);

// Spectral integration matrix S on Gauss-Legendre nodes of [-1,1]:
// sum_j S(i,j) f(t_j) = int_{-1}^{t_i} f for polynomials of degree < n.
std::vector<double> gl_integration_matrix(const Rule& gl);

}  // namespace rmt
