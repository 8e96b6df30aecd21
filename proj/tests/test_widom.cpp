#include <doctest.h>

#include <cmath>

#include "rmt/equilibrium.hpp"
#include "rmt/fredholm.hpp"
#include "rmt/tmtheory.hpp"
#include "rmt/widom.hpp"

using namespace rmt;

namespace {

Weight monomial(int m, double alpha) {
  std::vector<double> v(m + 1, 0.0);
  v[m] = 1.0;
  return Weight(alpha, v);
}

struct Setup {
  Weight w;
  RecurrenceTable t;
  EquilibriumData eq;
  WidomSystem s;
  Setup(int m, double alpha, int n)
      : w(monomial(m, alpha)),
        t(compute_recurrence(w, n + m + 2)),
        eq(equilibrium(w, n)),
        s(WidomSystem::build(w, n, t, eq)) {}
};

// composite Gauss-Legendre on [0, b] in u = sqrt(x / b), which absorbs sqrt(x) behaviour at 0
double integrate(const std::function<double(double)>& f, double b, int panels = 40) {
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const NystromGrid g = NystromGrid::gauss_legendre(double(p) / panels, double(p + 1) / panels, 16);
    for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * 2 * b * g.x[i] * f(b * g.x[i] * g.x[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("matrix identities") {
  for (int m : {1, 2, 3})
    for (int n : {8, 16}) {
      const Setup u(m, 1.0, n);
      const WidomSystem& s = u.s;
      CHECK(s.b_defect <= 1e-8);
      CHECK(s.bac_residual() <= 1e-6);
      CHECK(s.skew_defect(s.G11) <= 1e-7);
      CHECK(s.skew_defect(s.Ghat11) <= 1e-7);
      CHECK(s.moreC_residual() <= 1e-5);
      CHECK(s.A21(m - 1, m - 1) == doctest::Approx(-n / (2 * u.eq.beta_n)).epsilon(1e-10));
      CHECK((s.A12 - s.A21.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("odd n is rejected") {
  const Weight w = monomial(1, 1.0);
  const RecurrenceTable t = compute_recurrence(w, 12);
  CHECK_THROWS(WidomSystem::build(w, 9, t, equilibrium(w, 9)));
}

TEST_CASE("eps S1 vanishes on the diagonal") {
  for (int m : {1, 2}) {
    const Setup u(m, 1.5, 12);
    for (double y : {0.05, 0.4, 1.3, 0.9 * u.eq.beta_n}) CHECK(std::abs(u.s.epsS1(y, y)) < 1e-8);
  }
}

TEST_CASE("traces of the matrix kernels count eigenvalues") {
  for (int m : {1, 2}) {
    const Setup u(m, 1.0, 12);
    const double b = std::min(u.t.x_max, 3 * u.eq.beta_n);
    const double tr1 = integrate([&](double x) { return u.s.matrix_kernel(1, x, x)[0][0]; }, b);
    const double tr4 = integrate([&](double x) { return u.s.matrix_kernel(4, x, x)[0][0]; }, b);
    CHECK(tr1 == doctest::Approx(12.0).epsilon(1e-8));
    CHECK(tr4 == doctest::Approx(6.0).epsilon(1e-8));
  }
}

TEST_CASE("beta = 4 kernel transposition and beta = 2 reduction") {
  const Setup u(2, 1.0, 10);
  for (double x : {0.3, 1.1})
    for (double y : {0.6, 2.0}) {
      const Mat2 a = u.s.matrix_kernel(4, x, y), b = u.s.matrix_kernel(4, y, x);
      CHECK(a[0][0] == doctest::Approx(b[1][1]).epsilon(1e-10));
      const Mat2 c = u.s.matrix_kernel(1, x, y), d = u.s.matrix_kernel(1, y, x);
      CHECK(c[0][0] == doctest::Approx(d[1][1]).epsilon(1e-10));
      CHECK(u.s.K(u.s.point(x), u.s.point(y)) == doctest::Approx(cd_kernel(u.t, u.w, 10, x, y)).epsilon(1e-10));
    }
}

TEST_CASE("B block approaches X") {
  const int m = 2;
  const TmSystem tm = build_tm(m);
  double prev = 1e300;
  for (int n : {24, 48}) {
    const Setup u(m, 1.0, n);
    const Eigen::MatrixXd B12 = u.s.B.block(0, m, m, m) * (n / u.eq.beta_n);
    const double err = (B12 - tm.X).cwiseAbs().maxCoeff();
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("helpers") {
  CHECK(sgn(2.0) == 1.0);
  CHECK(sgn(-0.1) == -1.0);
  CHECK(sgn(0.0) == 0.0);
  const Mat2 k{{{1, 2}, {3, 4}}};
  const Mat2 c = conjugate(k, 2.0);
  CHECK(c[0][0] == 1.0);
  CHECK(c[0][1] == doctest::Approx(0.5));
  CHECK(c[1][0] == doctest::Approx(12.0));
  CHECK(c[1][1] == 4.0);
}
