#include <map>
#include "rmt/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kKappa = 1.0 / 12.0;

struct MpMeasure {
  std::vector<mpreal> x, w;
};

mpreal mp_V(const Weight& w, const mpreal& x) {
  mpreal s = 0;
  const auto& q = w.v_coeffs();
  for (int j = w.m(); j >= 0; --j) s = s * x + q[j];
  return s;
}

// Discretization of x^{alpha + shift} e^{-V(x)} dx on [0, X] in t = sqrt(x/X).
// The t-density is 2 X^{alpha+shift+1} t^{2(alpha+shift)+1} e^{-V}; the first panel
// absorbs the power of t into a Gauss-Jacobi rule.
MpMeasure build_mp_measure(const Weight& w, double X, int panels, int nodes, double shift) {
  const double c = 2.0 * (w.alpha() + shift) + 1.0;
  const mpreal Xm = X;
  const mpreal h = mpreal(1) / panels;
  const mpreal pref = 2 * pow(Xm, mpreal(w.alpha() + shift + 1.0));
  MpMeasure m;
  m.x.reserve(static_cast<size_t>(panels) * nodes);
  m.w.reserve(static_cast<size_t>(panels) * nodes);
  const RuleMp first = gauss_power_mp(nodes, c);
  const mpreal hc = pow(h, mpreal(c + 1.0));
  for (int i = 0; i < nodes; ++i) {
    const mpreal t = h * first.x[i];
    const mpreal x = Xm * t * t;
    m.x.push_back(x);
    m.w.push_back(pref * hc * first.w[i] * exp(-mp_V(w, x)));
  }
  const RuleMp gl = gauss_legendre_mp(nodes);
  const mpreal cm = c;
  for (int p = 1; p < panels; ++p) {
    const mpreal mid = h * (mpreal(p) + mpreal(0.5));
    for (int i = 0; i < nodes; ++i) {
      const mpreal t = mid + h / 2 * gl.x[i];
      const mpreal x = Xm * t * t;
      m.x.push_back(x);
      m.w.push_back(pref * pow(t, cm) * (h / 2) * gl.w[i] * exp(-mp_V(w, x)));
    }
  }
  return m;
}

int default_panels(int n_max) { return (n_max + 2) / 3 + 8; }

std::string mp_str(const mpreal& v) { return v.str(40, std::ios_base::scientific); }

}  // namespace

PrecisionContext PrecisionContext::from_env() {
  PrecisionContext c;
  if (const char* env = std::getenv("RMT_PRECISION_BITS")) {
    const int bits = std::atoi(env);
    if (bits >= 53) c.mantissa_bits = bits;
  }
  return c;
}

double RecurrenceTable::gamma(int k) const { return std::exp(log_gamma.at(k)); }

double choose_x_max(const Weight& w, int n, double digits) {
  const EquilibriumData eq = equilibrium(w, n);
  const double target = digits * std::log(10.0);
  auto decay = [&](double x) { return n * sqrt_moment_outer(eq.h_coeffs, x); };
  double hi = 2.0;
  while (decay(hi) < target) hi *= 2.0;
  double lo = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (decay(mid) < target ? lo : hi) = mid;
  }
  const double edge = 1.0 + 2.0 * std::pow(static_cast<double>(n), kKappa - 2.0 / 3.0);
  return eq.beta_n * std::max(1.1 * hi, edge);
}

RecurrenceTable compute_recurrence(const Weight& w, int n_max, PrecisionContext ctx) {
  if (n_max < w.m() + 2) throw DomainError("compute_recurrence: n_max must be >= m + 2");
  if (ctx.mantissa_bits < 53) throw DomainError("compute_recurrence: mantissa_bits must be >= 53");
  MpPrecisionGuard guard(ctx.mantissa_bits);
  const double digits = ctx.mantissa_bits * std::log10(2.0);
  const int panels = ctx.panel_count > 0 ? ctx.panel_count : default_panels(n_max);
  const int nodes = ctx.nodes_per_panel;
  if (panels * nodes < 4 * n_max) throw DomainError("compute_recurrence: quadrature too coarse for n_max");

  RecurrenceTable t;
  t.n_max = n_max;
  t.alpha = w.alpha();
  t.mantissa_bits = ctx.mantissa_bits;
  t.panel_count = panels;
  t.nodes_per_panel = nodes;
  t.x_max = choose_x_max(w, n_max, 2.0 * digits);

  const MpMeasure mu = build_mp_measure(w, t.x_max, panels, nodes, 0.0);
  const size_t N = mu.x.size();
  mpreal mass = 0;
  for (const auto& wi : mu.w) mass += wi;

  std::vector<mpreal> p(N), p_prev(N, mpreal(0)), r(N);
  const mpreal g0 = 1 / sqrt(mass);
  for (auto& v : p) v = g0;
  mpreal log_gamma = log(g0);
  mpreal pz = g0, pz_prev = 0;
  mpreal b_prev = 0;
  // fewer than ~20 significant bits left in b_k^2 means the recurrence is noise
  const mpreal loss_floor = pow(mpreal(2), -(ctx.mantissa_bits - 20));

  for (int k = 0; k <= n_max; ++k) {
    mpreal ak = 0;
    for (size_t i = 0; i < N; ++i) ak += mu.w[i] * mu.x[i] * p[i] * p[i];
    mpreal norm2 = 0, scale2 = 0;
    for (size_t i = 0; i < N; ++i) {
      const mpreal xp = (mu.x[i] - ak) * p[i];
      r[i] = xp - b_prev * p_prev[i];
      norm2 += mu.w[i] * r[i] * r[i];
      scale2 += mu.w[i] * (mu.x[i] * p[i]) * (mu.x[i] * p[i]);
    }
    if (!(norm2 > loss_floor * scale2))
      throw PrecisionError("compute_recurrence: b_" + std::to_string(k) +
                           "^2 lost all significant digits; raise mantissa_bits");
    const mpreal bk = sqrt(norm2);

    t.a.push_back(static_cast<double>(ak));
    t.b.push_back(static_cast<double>(bk));
    t.a_str.push_back(mp_str(ak));
    t.b_str.push_back(mp_str(bk));
    t.log_gamma.push_back(static_cast<double>(log_gamma));
    t.gamma_str.push_back(mp_str(exp(log_gamma)));
    t.p_at_zero.push_back(static_cast<double>(pz));
    t.p0_str.push_back(mp_str(pz));

    const mpreal pz_next = ((0 - ak) * pz - b_prev * pz_prev) / bk;
    pz_prev = pz;
    pz = pz_next;
    log_gamma -= log(bk);
    for (size_t i = 0; i < N; ++i) {
      p_prev[i] = p[i];
      p[i] = r[i] / bk;
    }
    b_prev = bk;
  }
  return t;
}

void eval_p_all(const RecurrenceTable& t, int kmax, double x, std::span<double> out) {
  if (kmax > t.n_max) throw IndexError("eval_p_all: k exceeds n_max");
  double prev = 0.0, cur = t.gamma(0);
  out[0] = cur;
  for (int k = 0; k < kmax; ++k) {
    const double next = ((x - t.a[k]) * cur - (k > 0 ? t.b[k - 1] : 0.0) * prev) / t.b[k];
    prev = cur;
    cur = next;
    out[k + 1] = cur;
  }
}

void eval_phi_all(const RecurrenceTable& t, const Weight& w, int kmax, double x, std::span<double> out) {
  if (x < 0.0) throw_domain("eval_phi", "x must be >= 0");
  if (kmax > t.n_max) throw IndexError("eval_phi: k exceeds n_max");
  const double lw = w.log_weight(x);
  const double sw = std::isinf(lw) ? 0.0 : std::exp(0.5 * lw);
  double prev = 0.0, cur = t.gamma(0) * sw;
  out[0] = cur;
  for (int k = 0; k < kmax; ++k) {
    const double next = ((x - t.a[k]) * cur - (k > 0 ? t.b[k - 1] : 0.0) * prev) / t.b[k];
    prev = cur;
    cur = next;
    out[k + 1] = cur;
  }
}

void eval_phi_deriv_all(const RecurrenceTable& t, const Weight& w, int kmax, double x, std::span<double> phi,
                        std::span<double> dphi) {
  if (!(x > 0.0)) throw_domain("eval_phi_deriv", "x must be > 0");
  if (kmax > t.n_max) throw IndexError("eval_phi_deriv: k exceeds n_max");
  const double sw = std::exp(0.5 * w.log_weight(x));
  const double logd = 0.5 * w.alpha() / x - 0.5 * w.V_prime(x);
  // q_k = p_k' sqrt(w), recurrence differentiated in x
  double prev = 0.0, cur = t.gamma(0) * sw;
  double qprev = 0.0, qcur = 0.0;
  phi[0] = cur;
  dphi[0] = qcur + logd * cur;
  for (int k = 0; k < kmax; ++k) {
    const double bm = k > 0 ? t.b[k - 1] : 0.0;
    const double next = ((x - t.a[k]) * cur - bm * prev) / t.b[k];
    const double qnext = ((x - t.a[k]) * qcur + cur - bm * qprev) / t.b[k];
    prev = cur;
    cur = next;
    qprev = qcur;
    qcur = qnext;
    phi[k + 1] = cur;
    dphi[k + 1] = qcur + logd * cur;
  }
}

double eval_phi(const RecurrenceTable& t, const Weight& w, int k, double x) {
  if (k < 0 || k > t.n_max) throw IndexError("eval_phi: k out of range");
  std::vector<double> v(k + 1);
  eval_phi_all(t, w, k, x, v);
  return v[k];
}

double eval_phi_deriv(const RecurrenceTable& t, const Weight& w, int k, double x) {
  if (k < 0 || k > t.n_max) throw IndexError("eval_phi_deriv: k out of range");
  std::vector<double> v(k + 1), d(k + 1);
  eval_phi_deriv_all(t, w, k, x, v, d);
  return d[k];
}

double cd_kernel(const RecurrenceTable& t, const Weight& w, int n, double x, double y) {
  if (n < 1 || n > t.n_max) throw IndexError("cd_kernel: n out of range");
  std::vector<double> px(n), py(n);
  eval_phi_all(t, w, n - 1, x, px);
  eval_phi_all(t, w, n - 1, y, py);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += px[k] * py[k];
  return s;
}

double cd_kernel_ratio(const RecurrenceTable& t, const Weight& w, int n, double x, double y) {
  if (n < 1 || n >= t.n_max) throw IndexError("cd_kernel_ratio: n out of range");
  std::vector<double> px(n + 1), py(n + 1);
  eval_phi_all(t, w, n, x, px);
  eval_phi_all(t, w, n, y, py);
  return t.b[n - 1] * (px[n] * py[n - 1] - px[n - 1] * py[n]) / (x - y);
}

double cauchy_at_zero(const RecurrenceTable& t, const Weight& w, int j, double panel_scale) {
  if (!(w.alpha() > 0.0)) throw DomainError("cauchy_at_zero: requires alpha > 0");
  if (j < 0 || j > t.n_max) throw IndexError("cauchy_at_zero: j out of range");
  MpPrecisionGuard guard(std::max(t.mantissa_bits, 128));
  const int panels = std::max(4, static_cast<int>(std::lround(t.panel_count * panel_scale)));
  // measure x^{alpha-1} e^{-V} dx: the 1/y factor moves into the Jacobi exponent
  const MpMeasure mu = build_mp_measure(w, t.x_max, panels, t.nodes_per_panel, -1.0);
  std::vector<mpreal> a(j + 1), b(j + 1);
  for (int k = 0; k <= j; ++k) {
    a[k] = mpreal(t.a_str[k]);
    b[k] = mpreal(t.b_str[k]);
  }
  const mpreal g0(t.gamma_str[0]);
  mpreal sum = 0;
  for (size_t i = 0; i < mu.x.size(); ++i) {
    mpreal prev = 0, cur = g0;
    for (int k = 0; k < j; ++k) {
      const mpreal next = ((mu.x[i] - a[k]) * cur - (k > 0 ? b[k - 1] : mpreal(0)) * prev) / b[k];
      prev = cur;
      cur = next;
    }
    sum += mu.w[i] * cur;
  }
  const double v = static_cast<double>(sum);
  if (!std::isfinite(v)) throw QuadratureError("cauchy_at_zero: non-finite result");
  return v;
}

std::vector<double> jacobi_zeros(const RecurrenceTable& t, int n) {
  if (n < 1 || n > t.n_max) throw IndexError("jacobi_zeros: n out of range");
  Eigen::VectorXd d(n), e(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) d(k) = t.a[k];
  for (int k = 0; k + 1 < n; ++k) e(k) = t.b[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

PanelGrid PanelGrid::build(double x_max, int uniform_panels, int nodes_per_panel, int graded_levels,
                           double ratio) {
  PanelGrid g;
  g.x_max = x_max;
  g.nodes_per_panel = nodes_per_panel;
  const double h = 1.0 / uniform_panels;
  g.edges.push_back(0.0);
  for (int l = graded_levels; l >= 1; --l) g.edges.push_back(h * std::pow(ratio, l));
  for (int p = 1; p <= uniform_panels; ++p) g.edges.push_back(h * p);
  g.edges.back() = 1.0;
  const Rule gl = gauss_legendre(nodes_per_panel);
  for (int p = 0; p + 1 < static_cast<int>(g.edges.size()); ++p) {
    const double ta = g.edges[p], tb = g.edges[p + 1];
    for (int i = 0; i < nodes_per_panel; ++i) {
      const double tt = 0.5 * (ta + tb) + 0.5 * (tb - ta) * gl.x[i];
      g.x.push_back(x_max * tt * tt);
      g.w.push_back(0.5 * (tb - ta) * gl.w[i] * 2.0 * x_max * tt);
    }
  }
  return g;
}

int PanelGrid::locate(double x) const {
  const double t = std::sqrt(std::max(x, 0.0) / x_max);
  auto it = std::upper_bound(edges.begin(), edges.end(), t);
  int p = static_cast<int>(it - edges.begin()) - 1;
  return std::clamp(p, 0, panel_count() - 1);
}

FunctionTable::FunctionTable(PanelGrid grid, int nfun, Eval eval)
    : grid_(std::move(grid)), nfun_(nfun), eval_(std::move(eval)) {
  const int npp = grid_.nodes_per_panel;
  const int P = grid_.panel_count();
  const size_t nn = grid_.x.size();
  vals_.assign(nn * nfun_, 0.0);
  cum_.assign(nn * nfun_, 0.0);
  panel_start_.assign(static_cast<size_t>(P + 1) * nfun_, 0.0);
  for (size_t i = 0; i < nn; ++i) eval_(grid_.x[i], std::span<double>(&vals_[i * nfun_], nfun_));
  const Rule gl = gauss_legendre(npp);
  const std::vector<double> S = gl_integration_matrix(gl);
  for (int p = 0; p < P; ++p) {
    const double ta = grid_.edges[p], tb = grid_.edges[p + 1];
    const double half = 0.5 * (tb - ta);
    for (int i = 0; i < npp; ++i) {
      const int node = p * npp + i;
      for (int f = 0; f < nfun_; ++f) {
        double s = panel_start_[static_cast<size_t>(p) * nfun_ + f];
        for (int j = 0; j < npp; ++j) {
          const int nj = p * npp + j;
          const double tj = 0.5 * (ta + tb) + half * gl.x[j];
          s += S[static_cast<size_t>(i) * npp + j] * half * vals_[idx(nj, f)] * 2.0 * grid_.x_max * tj;
        }
        cum_[idx(node, f)] = s;
      }
    }
    for (int f = 0; f < nfun_; ++f) {
      double s = panel_start_[static_cast<size_t>(p) * nfun_ + f];
      for (int j = 0; j < npp; ++j) s += grid_.w[p * npp + j] * vals_[idx(p * npp + j, f)];
      panel_start_[static_cast<size_t>(p + 1) * nfun_ + f] = s;
    }
  }
  totals_.assign(panel_start_.end() - nfun_, panel_start_.end());
}

std::vector<double> FunctionTable::cumulative(double x) const {
  if (x <= 0.0) return std::vector<double>(nfun_, 0.0);
  if (x >= grid_.x_max) return totals_;
  const int p = grid_.locate(x);
  const double ta = grid_.edges[p], t = std::sqrt(x / grid_.x_max);
  std::vector<double> out(panel_start_.begin() + static_cast<long>(p) * nfun_,
                          panel_start_.begin() + static_cast<long>(p + 1) * nfun_);
  if (t <= ta) return out;
  static thread_local std::map<int, Rule> rules;
  auto it = rules.find(grid_.nodes_per_panel);
  if (it == rules.end())
    it = rules.emplace(grid_.nodes_per_panel, gauss_legendre(grid_.nodes_per_panel)).first;
  const Rule& gl = it->second;
  std::vector<double> buf(nfun_);
  const double half = 0.5 * (t - ta);
  for (size_t i = 0; i < gl.x.size(); ++i) {
    const double s = 0.5 * (ta + t) + half * gl.x[i];
    eval_(grid_.x_max * s * s, buf);
    const double wt = half * gl.w[i] * 2.0 * grid_.x_max * s;
    for (int f = 0; f < nfun_; ++f) out[f] += wt * buf[f];
  }
  return out;
}

std::vector<double> FunctionTable::eps(double x) const {
  std::vector<double> F = cumulative(x);
  for (int f = 0; f < nfun_; ++f) F[f] -= 0.5 * totals_[f];
  return F;
}

double FunctionTable::inner(int f, int g) const {
  double s = 0.0;
  for (int i = 0; i < node_count(); ++i) s += grid_.w[i] * value(i, f) * value(i, g);
  return s;
}

double FunctionTable::inner_weighted(int f, int g, const std::function<double(double)>& h) const {
  double s = 0.0;
  for (int i = 0; i < node_count(); ++i) s += grid_.w[i] * h(grid_.x[i]) * value(i, f) * value(i, g);
  return s;
}

double FunctionTable::eps_inner(int f, int g) const {
  double s = 0.0, ig = 0.0;
  for (int i = 0; i < node_count(); ++i) {
    s += grid_.w[i] * cumulative_at_node(i, f) * value(i, g);
    ig += grid_.w[i] * value(i, g);
  }
  return s - 0.5 * totals_[f] * ig;
}

PanelGrid default_grid(const Weight& w, int kmax, double resolution) {
  const double x_max = choose_x_max(w, std::max(kmax, w.m() + 2), 20.0);
  const int panels = static_cast<int>(std::ceil(resolution * (0.75 * kmax + 10.0)));
  const double a = std::max(std::min(w.alpha(), 1.0), 0.1);
  const int levels = w.alpha() > 0.0 ? static_cast<int>(std::ceil(10.0 / a)) : 0;
  return PanelGrid::build(x_max, panels, 24, levels);
}

FunctionTable antiderivative_table(const RecurrenceTable& t, const Weight& w, int kmax, const PanelGrid& grid) {
  if (kmax > t.n_max) throw IndexError("antiderivative_table: k exceeds n_max");
  auto eval = [&t, w, kmax](double x, std::span<double> out) { eval_phi_all(t, w, kmax, x, out); };
  return FunctionTable(grid, kmax + 1, eval);
}

double inner_product(const std::vector<double>& f, const std::vector<double>& g, const PanelGrid& q) {
  if (f.size() != q.w.size() || g.size() != q.w.size())
    throw DomainError("inner_product: grid mismatch");
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += q.w[i] * f[i] * g[i];
  return s;
}

void to_json(nlohmann::json& j, const RecurrenceTable& t) {
  j = nlohmann::json{{"n_max", t.n_max},
                     {"alpha", t.alpha},
                     {"a", t.a_str},
                     {"b", t.b_str},
                     {"gamma", t.gamma_str},
                     {"p_at_zero", t.p0_str},
                     {"x_max", t.x_max},
                     {"mantissa_bits", t.mantissa_bits},
                     {"panel_count", t.panel_count},
                     {"nodes_per_panel", t.nodes_per_panel}};
}

RecurrenceTable recurrence_from_json(const nlohmann::json& j) {
  RecurrenceTable t;
  t.n_max = j.at("n_max").get<int>();
  t.alpha = j.at("alpha").get<double>();
  t.a_str = j.at("a").get<std::vector<std::string>>();
  t.b_str = j.at("b").get<std::vector<std::string>>();
  t.gamma_str = j.at("gamma").get<std::vector<std::string>>();
  t.p0_str = j.at("p_at_zero").get<std::vector<std::string>>();
  t.x_max = j.at("x_max").get<double>();
  t.mantissa_bits = j.at("mantissa_bits").get<int>();
  t.panel_count = j.at("panel_count").get<int>();
  t.nodes_per_panel = j.at("nodes_per_panel").get<int>();
  MpPrecisionGuard guard(t.mantissa_bits);
  for (size_t k = 0; k < t.a_str.size(); ++k) {
    t.a.push_back(std::stod(t.a_str[k]));
    t.b.push_back(std::stod(t.b_str[k]));
    t.log_gamma.push_back(static_cast<double>(log(mpreal(t.gamma_str[k]))));
    t.p_at_zero.push_back(std::stod(t.p0_str[k]));
  }
  return t;
}

}  // namespace rmt
