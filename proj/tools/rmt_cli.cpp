#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmt/asymptotics.hpp"
#include "rmt/convergence.hpp"
#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"
#include "rmt/fredholm.hpp"
#include "rmt/io.hpp"
#include "rmt/mc_oracle.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/tmtheory.hpp"
#include "rmt/widom.hpp"

using namespace rmt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct Common {
  double alpha = 1.0;
  std::string V = "x";
  std::string out = "-";
  std::string json;
  std::string svg;
  bool verify = false;
};

void add_weight(CLI::App* c, Common& o) {
  c->add_option("--alpha", o.alpha, "exponent alpha of x^alpha e^{-V(x)}")->capture_default_str();
  c->add_option("--V", o.V, "polynomial V, e.g. \"x\", \"2x^2\", \"x^2+0.5x\"")->capture_default_str();
}

void add_output(CLI::App* c, Common& o) {
  c->add_option("--out", o.out, "CSV output path, - for stdout")->capture_default_str();
  c->add_option("--json", o.json, "also write JSON here");
}

Weight make_weight(const Common& o) { return Weight(o.alpha, parse_polynomial(o.V)); }

nlohmann::json weight_params(const Common& o) { return {{"alpha", o.alpha}, {"V", o.V}}; }

void emit_csv(const Common& o, const RunManifest& m, const std::vector<std::string>& header,
              const std::vector<CsvRow>& rows) {
  if (o.out == "-" || o.out.empty()) {
    write_csv(std::cout, m, header, rows);
    return;
  }
  std::ostringstream os;
  write_csv(os, m, header, rows);
  write_text_file(o.out, os.str());
}

void emit_json(const Common& o, const RunManifest& m, const nlohmann::json& data) {
  if (o.json.empty()) return;
  std::ostringstream os;
  write_json(os, m, data);
  write_text_file(o.json, os.str());
}

std::string num(double v) { return format_number(v); }

int max_of(const std::vector<int>& v) { return *std::max_element(v.begin(), v.end()); }

// ---- recurrence
struct RecurrenceOpts {
  Common c;
  int n = 32;
};

int run_recurrence(const RecurrenceOpts& o) {
  const Weight w = make_weight(o.c);
  const RecurrenceTable t = compute_recurrence(w, o.n);
  RunManifest m{"recurrence", weight_params(o.c)};
  m.params["n"] = o.n;
  m.params["mantissa_bits"] = t.mantissa_bits;
  std::vector<CsvRow> rows;
  for (int k = 0; k <= t.n_max; ++k) rows.push_back({std::to_string(k), num(t.a[k]), num(t.b[k]), num(t.log_gamma[k])});
  emit_csv(o.c, m, {"k", "a_k", "b_k", "log_gamma_k"}, rows);
  nlohmann::json j;
  to_json(j, t);
  emit_json(o.c, m, j);
  return kExitOk;
}

// ---- equilibrium
struct EquilibriumOpts {
  Common c;
  std::string n = "16,32,64";
};

int run_equilibrium(const EquilibriumOpts& o) {
  const Weight w = make_weight(o.c);
  const std::vector<int> ns = parse_int_list(o.n);
  RunManifest m{"equilibrium", weight_params(o.c)};
  m.params["n"] = ns;
  const std::vector<double> h = limiting_h(w.m());
  std::vector<CsvRow> rows;
  nlohmann::json arr = nlohmann::json::array();
  for (int n : ns) {
    const EquilibriumData eq = equilibrium(w, n);
    const double norm = sqrt_moment_total(eq.h_coeffs) / (2.0 * std::numbers::pi) - 1.0;
    double dev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = i / 200.0;
      dev = std::max(dev, std::abs(eq.h(x) - eval_poly(h, x)));
    }
    const double resid = mrs_defining_integral(w, eq.beta_n) - n;
    rows.push_back({std::to_string(n), num(eq.beta_n), num(resid), num(eq.c_n), num(eq.tilde_c_n), num(norm), num(dev)});
    nlohmann::json j;
    to_json(j, eq);
    arr.push_back(j);
  }
  emit_csv(o.c, m, {"n", "beta_n", "mrs_residual", "c_n", "tilde_c_n", "normalization_rel_err", "h_max_deviation"},
           rows);
  emit_json(o.c, m, arr);
  return kExitOk;
}

// ---- widom
struct WidomOpts {
  Common c;
  std::string n = "8,12,16,24";
  std::string dump;
};

int run_widom(const WidomOpts& o) {
  const Weight w = make_weight(o.c);
  const std::vector<int> ns = parse_int_list(o.n);
  const RecurrenceTable t = compute_recurrence(w, max_of(ns) + w.m() + 2);
  RunManifest m{"widom", weight_params(o.c)};
  m.params["n"] = ns;
  std::vector<CsvRow> rows;
  nlohmann::json dump = nlohmann::json::array();
  bool ok = true;
  for (int n : ns) {
    const EquilibriumData eq = equilibrium(w, n);
    const WidomSystem s = WidomSystem::build(w, n, t, eq);
    const int mm = s.m;
    const double a21 = std::abs(s.A21(mm - 1, mm - 1) + n / (2.0 * eq.beta_n)) / (n / (2.0 * eq.beta_n));
    const double g = s.skew_defect(s.G11), gh = s.skew_defect(s.Ghat11);
    const double bac = s.bac_residual(), mc = s.moreC_residual();
    ok = ok && s.b_defect <= 1e-8 && bac <= 1e-6 && g <= 1e-7 && gh <= 1e-7 && mc <= 1e-5 && a21 <= 1e-10;
    rows.push_back({std::to_string(n), std::to_string(mm), num(s.b_defect), num(bac), num(g), num(gh), num(mc), num(a21),
                    num(s.cond_C11), num(s.cond_Chat22)});
    nlohmann::json j;
    to_json(j, s);
    dump.push_back(j);
  }
  emit_csv(o.c, m,
           {"n", "m", "b_skew", "bac_residual", "g11_skew", "ghat11_skew", "moreC_residual", "a21_mm_rel_err",
            "cond_C11", "cond_Chat22"},
           rows);
  emit_json(o.c, m, dump);
  if (!o.dump.empty()) {
    std::ostringstream os;
    write_json(os, m, dump);
    write_text_file(o.dump, os.str());
  }
  return (o.c.verify && !ok) ? kExitVerify : kExitOk;
}

// ---- kernel
struct KernelOpts {
  Common c;
  std::string regime = "hard";
  int beta = 2;
  int n = 32;
  std::string points;
  double x_bulk = 0.5;
};

int run_kernel(const KernelOpts& o) {
  const Weight w = make_weight(o.c);
  const Regime r = parse_regime(o.regime);
  const std::vector<double> pts = o.points.empty() ? default_lattice(r).points : parse_double_list(o.points);
  const RecurrenceTable t = compute_recurrence(w, o.n + w.m() + 2);
  const EquilibriumData eq = equilibrium(w, o.n);
  const ScalingConstants sc = scalings(eq, r, o.x_bulk);
  RunManifest m{"kernel", weight_params(o.c)};
  m.params.update({{"regime", o.regime}, {"beta", o.beta}, {"n", o.n}, {"points", pts}, {"x_bulk", o.x_bulk}});
  std::vector<CsvRow> rows;
  if (o.beta == 2) {
    const double s2 = sc.scale_sq(2);
    for (double xi : pts)
      for (double eta : pts) {
        const double k = cd_kernel(t, w, o.n, sc.map(xi, 2), sc.map(eta, 2)) / s2;
        const double l = limit_kernel_beta2(r, w.alpha(), xi, eta);
        rows.push_back({num(xi), num(eta), "K", num(k), num(l), num(k - l)});
      }
  } else {
    const WidomSystem sys = WidomSystem::build(w, o.n, t, eq);
    static const char* names[2][2] = {{"K11", "K12"}, {"K21", "K22"}};
    for (double xi : pts)
      for (double eta : pts) {
        const Mat2 k = scaled_matrix_kernel(sys, o.beta, sc, xi, eta);
        const Mat2 l = limit_matrix_kernel(r, o.beta, w.alpha(), xi, eta);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            rows.push_back({num(xi), num(eta), names[i][j], num(k[i][j]), num(l[i][j]), num(k[i][j] - l[i][j])});
      }
  }
  emit_csv(o.c, m, {"xi", "eta", "entry", "finite", "limit", "difference"}, rows);
  return kExitOk;
}

// ---- converge
struct ConvergeOpts {
  Common c;
  std::string regime = "hard";
  int beta = 2;
  std::string n = "16,32,64";
  double soft_c = 0.25;
};

int run_converge(const ConvergeOpts& o) {
  const Weight w = make_weight(o.c);
  const Regime r = parse_regime(o.regime);
  const std::vector<int> ns = parse_int_list(o.n);
  const RecurrenceTable t = compute_recurrence(w, max_of(ns) + w.m() + 2);
  const Lattice lat = default_lattice(r);
  const std::vector<ConvergenceRow> table = convergence_table(r, o.beta, w, t, ns, lat, o.soft_c);
  RunManifest m{"converge", weight_params(o.c)};
  m.params.update({{"regime", o.regime}, {"beta", o.beta}, {"n", ns}, {"soft_c", o.soft_c}});
  std::vector<CsvRow> rows;
  bool ok = true;
  for (size_t k = 0; k < table.size(); ++k) {
    const Mat2& e = table[k].err;
    if (o.beta == 2)
      rows.push_back({std::to_string(table[k].n), num(e[0][0])});
    else
      rows.push_back({std::to_string(table[k].n), num(e[0][0]), num(e[0][1]), num(e[1][0]), num(e[1][1])});
    if (k > 0)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ok = ok && e[i][j] < table[k - 1].err[i][j];
  }
  const std::vector<std::string> header =
      o.beta == 2 ? std::vector<std::string>{"n", "err"} : std::vector<std::string>{"n", "err11", "err12", "err21", "err22"};
  emit_csv(o.c, m, header, rows);
  if (!o.c.svg.empty()) {
    std::vector<PlotSeries> series;
    const int entries = o.beta == 2 ? 1 : 4;
    for (int q = 0; q < entries; ++q) {
      PlotSeries s{o.beta == 2 ? "K" : std::string("K") + char('1' + q / 2) + char('1' + q % 2), {}, {}};
      for (const auto& row : table) {
        s.x.push_back(row.n);
        s.y.push_back(row.err[q / 2][q % 2]);
      }
      series.push_back(s);
    }
    write_text_file(o.c.svg, loglog_svg("weighted sup error, " + o.regime + " edge, beta = " + std::to_string(o.beta),
                                        "n", "error", series, m));
  }
  return (o.c.verify && !ok) ? kExitVerify : kExitOk;
}

// ---- gap
struct GapOpts {
  Common c;
  std::string regime = "hard";
  int beta = 2;
  std::string s = "1,4,8";
  bool limit = false;
  int n = 0;
  int order = 40;
  double x_bulk = 0.5;
};

int run_gap(const GapOpts& o) {
  const Regime r = parse_regime(o.regime);
  const std::vector<double> ss = parse_double_list(o.s);
  if (!o.limit && o.n <= 0) throw DomainError("gap: give --limit or --n");
  RunManifest m{"gap", weight_params(o.c)};
  m.params.update({{"regime", o.regime}, {"beta", o.beta}, {"s", ss}, {"limit", o.limit}, {"n", o.n},
                   {"order", o.order}, {"x_bulk", o.x_bulk}});
  std::vector<CsvRow> rows;
  const std::string what = r == Regime::hard ? "cdf_smallest" : r == Regime::soft ? "cdf_largest" : "gap_probability";
  if (o.limit) {
    for (double s : ss) {
      const FredholmValue v = r == Regime::hard   ? smallest_eig_cdf_limit(o.beta, o.c.alpha, s, o.order)
                              : r == Regime::soft ? largest_eig_cdf_limit(o.beta, s, o.order)
                                                  : bulk_gap_limit(o.beta, s, o.order);
      rows.push_back({num(s), what, num(v.value), num(v.value_refined), num(v.self_conv())});
    }
  } else {
    const Weight w = make_weight(o.c);
    const RecurrenceTable t = compute_recurrence(w, o.n + w.m() + 2);
    const EquilibriumData eq = equilibrium(w, o.n);
    std::optional<WidomSystem> sys;
    if (o.beta != 2) sys = WidomSystem::build(w, o.n, t, eq);
    const FiniteSource src{&t, &w, o.n, sys ? &*sys : nullptr};
    const ScalingConstants sc = scalings(eq, r, o.x_bulk);
    for (double s : ss) {
      const FredholmValue v = r == Regime::hard   ? smallest_eig_cdf_finite(o.beta, src, sc, s, o.order)
                              : r == Regime::soft ? largest_eig_cdf_finite(o.beta, src, sc, s, o.order)
                                                  : bulk_gap_finite(o.beta, src, sc, s, o.order);
      rows.push_back({num(s), what, num(v.value), num(v.value_refined), num(v.self_conv())});
    }
  }
  emit_csv(o.c, m, {"s", "quantity", "value", "value_2N", "self_convergence"}, rows);
  return kExitOk;
}

// ---- extreme-cdf
struct ExtremeOpts {
  Common c;
  std::string which = "smallest";
  int beta = 2;
  int n = 16;
  std::string s;
  int samples = 0;
  std::uint64_t seed = 1;
  int order = 40;
  bool physical = false;
};

int run_extreme(const ExtremeOpts& o) {
  const Weight w = make_weight(o.c);
  const bool smallest = o.which == "smallest";
  if (!smallest && o.which != "largest") throw DomainError("--which must be smallest or largest");
  const Regime r = smallest ? Regime::hard : Regime::soft;
  const std::vector<double> ss =
      o.s.empty() ? (smallest ? std::vector<double>{0.5, 1, 2, 4, 8} : std::vector<double>{-4, -3, -2, -1, 0, 1})
                  : parse_double_list(o.s);
  const RecurrenceTable t = compute_recurrence(w, o.n + w.m() + 2);
  const EquilibriumData eq = equilibrium(w, o.n);
  std::optional<WidomSystem> sys;
  if (o.beta != 2) sys = WidomSystem::build(w, o.n, t, eq);
  const FiniteSource src{&t, &w, o.n, sys ? &*sys : nullptr};
  const ScalingConstants sc = scalings(eq, r);
  RunManifest m{"extreme-cdf", weight_params(o.c)};
  m.params.update({{"which", o.which}, {"beta", o.beta}, {"n", o.n}, {"s", ss}, {"samples", o.samples},
                   {"seed", o.seed}, {"order", o.order}, {"physical", o.physical}});

  // thresholds in the original variable
  std::vector<double> phys;
  for (double s : ss) phys.push_back(o.physical ? s : sc.map(s, o.beta));
  EmpiricalCdf mc;
  if (o.samples > 0)
    mc = empirical_extreme_cdf(sampler_for(w, o.beta, o.n, o.seed, o.samples),
                               smallest ? Extreme::smallest : Extreme::largest, phys);
  std::vector<CsvRow> rows;
  for (size_t i = 0; i < ss.size(); ++i) {
    FredholmValue f;
    if (o.physical && o.beta == 2 && smallest) {
      f = smallest_eig_cdf_unitary(t, w, o.n, ss[i], o.order);
    } else if (o.physical) {
      throw DomainError("--physical is available for the smallest eigenvalue at beta = 2");
    } else {
      f = smallest ? smallest_eig_cdf_finite(o.beta, src, sc, ss[i], o.order)
                   : largest_eig_cdf_finite(o.beta, src, sc, ss[i], o.order);
    }
    CsvRow row{num(ss[i]), num(phys[i]), num(f.value), num(f.self_conv())};
    if (!o.physical) {
      const FredholmValue l =
          smallest ? smallest_eig_cdf_limit(o.beta, w.alpha(), ss[i], o.order) : largest_eig_cdf_limit(o.beta, ss[i], o.order);
      row.push_back(num(l.value));
    } else {
      row.push_back("");
    }
    row.push_back(o.samples > 0 ? num(mc.prob[i]) : "");
    row.push_back(o.samples > 0 ? num(mc.stderr_[i]) : "");
    rows.push_back(row);
  }
  emit_csv(o.c, m, {"s", "x", "fredholm", "self_convergence", "limit", "mc", "mc_stderr"}, rows);
  return kExitOk;
}

// ---- tm-verify
struct TmOpts {
  Common c;
  std::string m = "1..32";
  int q_max = 200;
};

int run_tm(const TmOpts& o) {
  const std::vector<int> ms = parse_int_list(o.m);
  RunManifest man{"tm-verify", {{"m", ms}, {"q_max", o.q_max}}};
  std::vector<CsvRow> rows;
  bool ok = true;
  auto add = [&](int m, const BoundCheck& b) {
    ok = ok && b.ok;
    rows.push_back({std::to_string(m), b.name, num(b.value), num(b.bound), num(b.slack), b.ok ? "pass" : "FAIL"});
  };
  for (int m : ms) {
    if (m < 1) throw DomainError("tm-verify: m must be >= 1");
    const TmSystem s = build_tm(m);
    const TmInvertibility inv = verify_tm_invertible(s);
    add(m, {"abs_det_T", std::abs(inv.det), 1e-8, std::abs(inv.det) - 1e-8, std::abs(inv.det) > 1e-8});
    const double aya = aya_identity(s);
    add(m, {"aYa_minus_half_m", std::abs(aya - 0.5 * m), 1e-12, 1e-12 - std::abs(aya - 0.5 * m),
            std::abs(aya - 0.5 * m) <= 1e-12 * std::max(1.0, 0.5 * m)});
    for (const BoundCheck& b : verify_d_sequence(s)) add(m, b);
    if (m >= 2) {
      for (const BoundCheck& b : verify_integral_bounds(m, o.q_max)) add(m, b);
      for (const BoundCheck& b : verify_aux(m, o.q_max)) add(m, b);
      for (const BoundCheck& b : verify_norm_bounds(s).checks) add(m, b);
    }
  }
  emit_csv(o.c, man, {"m", "check", "value", "bound", "slack", "status"}, rows);
  std::cerr << (ok ? "all checks passed" : "some checks FAILED") << " (" << rows.size() << " checks)\n";
  return ok ? kExitOk : kExitVerify;
}

// ---- asympt-compare
struct AsymptOpts {
  Common c;
  std::string n = "16,32,64";
  int points = 200;
};

int run_asympt(const AsymptOpts& o) {
  const Weight w = make_weight(o.c);
  const std::vector<int> ns = parse_int_list(o.n);
  const RecurrenceTable t = compute_recurrence(w, max_of(ns) + w.m() + 2);
  RunManifest m{"asympt-compare", weight_params(o.c)};
  m.params.update({{"n", ns}, {"points", o.points}});
  std::vector<CsvRow> rows;
  std::vector<PlotSeries> series;
  for (Region reg : {Region::bessel, Region::bulk, Region::airy, Region::exponential})
    series.push_back({std::string("phi ") + region_name(reg), {}, {}});
  for (int n : ns) {
    const EquilibriumData eq = equilibrium(w, n);
    const WidomSystem sys = WidomSystem::build(w, n, t, eq);
    int k = 0;
    for (Region reg : {Region::bessel, Region::bulk, Region::airy, Region::exponential}) {
      const LeadingOrderError e = leading_order_error(reg, sys, t, w, eq, o.points);
      rows.push_back({std::to_string(n), region_name(reg), num(e.phi), num(e.psi1), num(e.psi2)});
      series[k].x.push_back(n);
      series[k].y.push_back(e.phi);
      ++k;
    }
  }
  emit_csv(o.c, m, {"n", "region", "phi_rel_err", "psi1_rel_err", "psi2_rel_err"}, rows);
  if (!o.c.svg.empty())
    write_text_file(o.c.svg, loglog_svg("leading-order relative error", "n", "error", series, m));
  return kExitOk;
}

// ---- sample
struct SampleOpts {
  Common c;
  int beta = 2;
  int n = 16;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::string mode = "extremes";
  int bins = 40;
};

int run_sample(const SampleOpts& o) {
  const Weight w = make_weight(o.c);
  const SamplerConfig cfg = sampler_for(w, o.beta, o.n, o.seed, o.samples);
  RunManifest m{"sample", weight_params(o.c)};
  m.params.update({{"beta", o.beta}, {"n", o.n}, {"samples", o.samples}, {"seed", o.seed}, {"mode", o.mode},
                   {"bins", o.bins}, {"a_param", cfg.a_param}, {"rate", cfg.rate}, {"eigenvalues", cfg.n}});
  std::vector<CsvRow> rows;
  if (o.mode == "extremes") {
    const std::vector<double> lo = sample_extremes(cfg, Extreme::smallest);
    const std::vector<double> hi = sample_extremes(cfg, Extreme::largest);
    for (int k = 0; k < cfg.n_samples; ++k) rows.push_back({std::to_string(k), num(lo[k]), num(hi[k])});
    emit_csv(o.c, m, {"draw", "smallest", "largest"}, rows);
  } else if (o.mode == "density") {
    const EquilibriumData eq = equilibrium(w, o.n);
    const Histogram h = empirical_density(cfg, 0.0, 1.2 * eq.beta_n, o.bins);
    for (size_t b = 0; b < h.centers.size(); ++b) {
      const double x = h.centers[b] / eq.beta_n;
      const double ref = (x > 0.0 && x <= 1.0) ? omega_n(eq, x) / eq.beta_n : 0.0;
      rows.push_back({num(h.centers[b]), num(h.density[b]), num(ref)});
    }
    emit_csv(o.c, m, {"x", "density", "equilibrium_density"}, rows);
  } else {
    throw DomainError("--mode must be extremes or density");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-n kernels, limits and checks for Laguerre-type ensembles"};
  app.require_subcommand(1);
  int code = kExitOk;

  RecurrenceOpts rec;
  auto* c_rec = app.add_subcommand("recurrence", "recurrence coefficients of the orthonormal polynomials");
  add_weight(c_rec, rec.c);
  add_output(c_rec, rec.c);
  c_rec->add_option("--n", rec.n, "largest degree")->capture_default_str();
  c_rec->callback([&] { code = run_recurrence(rec); });

  EquilibriumOpts eqo;
  auto* c_eq = app.add_subcommand("equilibrium", "MRS numbers, h_n and edge constants");
  add_weight(c_eq, eqo.c);
  add_output(c_eq, eqo.c);
  c_eq->add_option("--n", eqo.n, "list of n")->capture_default_str();
  c_eq->callback([&] { code = run_equilibrium(eqo); });

  WidomOpts wo;
  auto* c_w = app.add_subcommand("widom", "matrix identities of the beta = 1, 4 construction");
  add_weight(c_w, wo.c);
  add_output(c_w, wo.c);
  c_w->add_option("--n", wo.n, "list of even n")->capture_default_str();
  c_w->add_option("--dump-widom", wo.dump, "write A, B, C, G matrices as JSON");
  c_w->add_flag("--verify", wo.c.verify, "exit 2 if an identity misses its tolerance");
  c_w->callback([&] { code = run_widom(wo); });

  KernelOpts ko;
  auto* c_k = app.add_subcommand("kernel", "finite-n scaled kernel against its limit on a lattice");
  add_weight(c_k, ko.c);
  add_output(c_k, ko.c);
  c_k->add_option("--regime", ko.regime, "hard, soft or bulk")->capture_default_str();
  c_k->add_option("--beta", ko.beta, "1, 2 or 4")->capture_default_str();
  c_k->add_option("--n", ko.n, "even n for beta = 1, 4")->capture_default_str();
  c_k->add_option("--points", ko.points, "comma list of local variables (default: the regime lattice)");
  c_k->add_option("--x-bulk", ko.x_bulk, "bulk point in (0,1)")->capture_default_str();
  c_k->callback([&] { code = run_kernel(ko); });

  ConvergeOpts co;
  auto* c_c = app.add_subcommand("converge", "weighted sup errors against the limit kernels");
  add_weight(c_c, co.c);
  add_output(c_c, co.c);
  c_c->add_option("--regime", co.regime, "hard, soft or bulk")->capture_default_str();
  c_c->add_option("--beta", co.beta, "1, 2 or 4")->capture_default_str();
  c_c->add_option("--n", co.n, "list of n")->capture_default_str();
  c_c->add_option("--soft-c", co.soft_c, "decay constant of the soft-edge error weight")->capture_default_str();
  c_c->add_option("--svg", co.c.svg, "log-log plot of the errors");
  c_c->add_flag("--verify", co.c.verify, "exit 2 unless every column strictly decreases");
  c_c->callback([&] { code = run_converge(co); });

  GapOpts go;
  auto* c_g = app.add_subcommand("gap", "Fredholm determinants: extreme eigenvalue CDFs and bulk gaps");
  add_weight(c_g, go.c);
  add_output(c_g, go.c);
  c_g->add_option("--regime", go.regime, "hard, soft or bulk")->capture_default_str();
  c_g->add_option("--beta", go.beta, "1, 2 or 4")->capture_default_str();
  c_g->add_option("--s", go.s, "comma list of interval ends")->capture_default_str();
  c_g->add_flag("--limit", go.limit, "use the limit kernel");
  c_g->add_option("--n", go.n, "finite n");
  c_g->add_option("--order", go.order, "quadrature order")->capture_default_str();
  c_g->add_option("--x-bulk", go.x_bulk, "bulk point in (0,1)")->capture_default_str();
  c_g->callback([&] { code = run_gap(go); });

  ExtremeOpts xo;
  auto* c_x = app.add_subcommand("extreme-cdf", "finite-n extreme eigenvalue CDF, limit and Monte Carlo");
  add_weight(c_x, xo.c);
  add_output(c_x, xo.c);
  c_x->add_option("--which", xo.which, "smallest or largest")->capture_default_str();
  c_x->add_option("--beta", xo.beta, "1, 2 or 4")->capture_default_str();
  c_x->add_option("--n", xo.n, "n")->capture_default_str();
  c_x->add_option("--s", xo.s, "thresholds (local units unless --physical)");
  c_x->add_option("--samples", xo.samples, "Monte Carlo draws, 0 to skip")->capture_default_str();
  c_x->add_option("--seed", xo.seed, "seed")->capture_default_str();
  c_x->add_option("--order", xo.order, "quadrature order")->capture_default_str();
  c_x->add_flag("--physical", xo.physical, "thresholds in the original variable");
  c_x->callback([&] { code = run_extreme(xo); });

  TmOpts to;
  auto* c_t = app.add_subcommand("tm-verify", "invertibility of T_m and the bounds behind it");
  add_output(c_t, to.c);
  c_t->add_option("--m", to.m, "m range, e.g. 1..32")->capture_default_str();
  c_t->add_option("--q-max", to.q_max, "largest q in the integral bounds")->capture_default_str();
  c_t->callback([&] { code = run_tm(to); });

  AsymptOpts ao;
  auto* c_a = app.add_subcommand("asympt-compare", "leading-order evaluators against exact values per region");
  add_weight(c_a, ao.c);
  add_output(c_a, ao.c);
  c_a->add_option("--n", ao.n, "list of even n")->capture_default_str();
  c_a->add_option("--points", ao.points, "sample intervals per region")->capture_default_str();
  c_a->add_option("--svg", ao.c.svg, "log-log plot of the phi errors");
  c_a->callback([&] { code = run_asympt(ao); });

  SampleOpts so;
  auto* c_s = app.add_subcommand("sample", "Monte Carlo draws from the bidiagonal model (V linear)");
  add_weight(c_s, so.c);
  add_output(c_s, so.c);
  c_s->add_option("--beta", so.beta, "1, 2 or 4")->capture_default_str();
  c_s->add_option("--n", so.n, "n")->capture_default_str();
  c_s->add_option("--samples", so.samples, "draws")->capture_default_str();
  c_s->add_option("--seed", so.seed, "seed")->capture_default_str();
  c_s->add_option("--mode", so.mode, "extremes or density")->capture_default_str();
  c_s->add_option("--bins", so.bins, "histogram bins")->capture_default_str();
  c_s->callback([&] { code = run_sample(so); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
  return code;
}
