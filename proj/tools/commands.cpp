#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "report.hpp"
#include "schauder/error.hpp"
#include "schauder/evolution.hpp"
#include "schauder/experiments.hpp"
#include "schauder/geometry.hpp"
#include "schauder/halfsphere.hpp"
#include "schauder/holder.hpp"
#include "schauder/io.hpp"
#include "schauder/oracle.hpp"
#include "schauder/reflection.hpp"

namespace schauder::cli {

namespace {

struct Outcome {
  Json config;
  Json results;
  std::vector<Check> checks;
  Table table;
};

Json report_json(const std::string& command, const Outcome& o) {
  return {{"command", command},
          {"config", o.config},
          {"results", o.results},
          {"checks", checks_json(o.checks)},
          {"status", all_passed(o.checks) ? "pass" : "violation"}};
}

Check at_most(std::string name, double value, double tol) { return {std::move(name), value <= tol, value, tol}; }
Check below(std::string name, double value, double tol) { return {std::move(name), value < tol, value, tol}; }

// ---- eigen ------------------------------------------------------------------

struct EigenArgs {
  int lmax = 2;
  int points = 10;
  int quad_order = 0;
  std::uint64_t seed = 0;
};

Outcome run_eigen(const EigenArgs& a) {
  if (a.lmax < 0 || a.lmax > kMaxDegree) throw InvalidArgument("lmax out of range");
  const int order = a.quad_order > 0 ? a.quad_order : std::max(20, 2 * a.lmax + 4);
  const auto basis = enumerate_modes(a.lmax);
  Outcome o;
  o.config = {{"lmax", a.lmax}, {"points", a.points}, {"quadrature_order", order}, {"seed", a.seed}};
  Json modes = Json::array();
  std::vector<double> lambdas;
  double lambda_err = 0.0;
  bool sorted = true;
  o.table.columns = {"l", "m", "lambda", "normalization"};
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const auto& m = (*basis)[k];
    modes.push_back({{"l", m.degree}, {"m", m.order}, {"lambda", m.eigenvalue}, {"normalization", m.normalization}});
    o.table.rows.push_back({m.degree, m.order, m.eigenvalue, m.normalization});
    lambdas.push_back(m.eigenvalue);
    lambda_err = std::max(lambda_err, std::abs(m.eigenvalue - m.degree * (m.degree + 1.0)));
    if (k > 0 && m.eigenvalue < lambdas[k - 1]) sorted = false;
  }
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> uz(0.0, 1.0), uphi(0.0, 2.0 * std::numbers::pi);
  const double phi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double c1 = std::sqrt(3.0 / (2.0 * std::numbers::pi));
  double err0 = 0.0, err1 = 0.0;
  for (int i = 0; i < a.points; ++i) {
    const double z = uz(rng), phi = uphi(rng), r = std::sqrt(1.0 - z * z);
    const Vec3 p{r * std::cos(phi), r * std::sin(phi), z};
    err0 = std::max(err0, std::abs(eval_mode(Eigenmode::make(0, 0), p) - phi0));
    if (a.lmax >= 1) {
      err1 = std::max(err1, std::abs(eval_mode(Eigenmode::make(1, 1), p) - c1 * p[0]));
      err1 = std::max(err1, std::abs(eval_mode(Eigenmode::make(1, -1), p) - c1 * p[1]));
    }
  }
  const double gram = gram_deviation(*basis, quadrature(order));
  o.results = {{"modes", modes}, {"eigenvalues", number_array(lambdas)}, {"phi0", phi0},
               {"phi0_max_error", err0}, {"phi1_max_error", err1}, {"gram_deviation", gram}};
  o.checks = {at_most("eigenvalue_formula", lambda_err, 1e-12), {"eigenvalues_sorted", sorted, sorted ? 1.0 : 0.0, 1.0},
              at_most("phi0_values", err0, 1e-10), at_most("phi1_values", err1, 1e-10),
              below("gram_deviation", gram, 1e-8)};
  return o;
}

// ---- decay ------------------------------------------------------------------

struct DecayArgs {
  std::string mode = "l2";
  std::string u0;
  double tmax = 1.0;
  int samples = 100;
  int lmax = 4;
  double slack = 1e-12;
  std::uint64_t seed = 0;
};

Outcome run_decay(const DecayArgs& a) {
  if (a.mode != "l2" && a.mode != "sup") throw InvalidArgument("mode must be l2 or sup");
  if (a.samples < 1) throw InvalidArgument("samples must be positive");
  const auto basis = enumerate_modes(a.lmax);
  const std::string desc = a.u0.empty() ? "perp:seed=" + std::to_string(a.seed) : a.u0;
  const auto u0 = parse_field_descriptor(desc, basis);
  std::vector<double> t(a.samples + 1);
  for (int k = 0; k <= a.samples; ++k) t[k] = a.tmax * k / a.samples;
  const auto rep = decay_experiment(u0, t, a.mode == "l2" ? DecayNorm::L2 : DecayNorm::SupNodes);
  Outcome o;
  o.config = {{"mode", a.mode}, {"u0", desc}, {"tmax", a.tmax}, {"samples", a.samples}, {"lmax", a.lmax},
              {"basis_size", basis->size()}, {"slack", a.slack}, {"seed", a.seed}};
  o.results = {{"times", number_array(rep.times)},
               {"perp_norms", number_array(rep.perp_norms)},
               {"parallel_norms", number_array(rep.parallel_norms)},
               {"total_norms", number_array(rep.total_norms)},
               {"weighted_perp", number_array(rep.weighted_perp)},
               {"fitted_rate", rep.fitted_rate ? Json(*rep.fitted_rate) : Json(nullptr)},
               {"fit_points", rep.fit_points},
               {"plateau", rep.plateau},
               {"zero_initial", rep.zero_initial}};
  double rise = 0.0, drift = 0.0;
  for (std::size_t k = 1; k < rep.times.size(); ++k) {
    rise = std::max(rise, rep.weighted_perp[k] - rep.weighted_perp[k - 1]);
    drift = std::max(drift, std::abs(rep.parallel_norms[k] - rep.parallel_norms[0]));
  }
  o.checks.push_back(at_most("kernel_constant", drift, 1e-12));
  if (a.mode == "l2") o.checks.push_back(at_most("energy_monotone", rise, a.slack));
  o.table.columns = {"t", "perp", "parallel", "total", "weighted_perp"};
  for (std::size_t k = 0; k < rep.times.size(); ++k)
    o.table.rows.push_back(
        {rep.times[k], rep.perp_norms[k], rep.parallel_norms[k], rep.total_norms[k], rep.weighted_perp[k]});
  return o;
}

// ---- probe ------------------------------------------------------------------

struct ProbeArgs {
  int instances = 100;
  std::string T = "1,2,4,8";
  int lmax = 4;
  double gamma = 0.5;
  int chart_nodes = 9;
  double time_step = 1.0 / 16.0;
  double spread_limit = 2.0;
  std::uint64_t seed = 0;
};

Outcome run_probe(const ProbeArgs& a) {
  if (a.instances < 1) throw InvalidArgument("instances must be positive");
  ProbeConfig cfg;
  cfg.seed = a.seed;
  cfg.n_instances = static_cast<std::size_t>(a.instances);
  cfg.l_max = a.lmax;
  cfg.T_list = parse_number_list(a.T);
  cfg.gamma = a.gamma;
  cfg.chart_nodes = static_cast<std::size_t>(a.chart_nodes);
  cfg.time_step = a.time_step;
  const auto rep = schauder_ratio_probe(cfg);
  Outcome o;
  o.config = {{"instances", a.instances}, {"T", number_array(cfg.T_list)}, {"lmax", a.lmax},
              {"basis_size", enumerate_modes(a.lmax)->size()}, {"gamma", a.gamma}, {"chart_nodes", a.chart_nodes},
              {"time_step", a.time_step}, {"forcing_knot_spacing", cfg.forcing_knot_spacing},
              {"operator", EvolutionOperator{cfg.op}.name()}, {"spread_limit", a.spread_limit}, {"seed", a.seed}};
  Json ratios = Json::array(), ratios_c = Json::array();
  for (std::size_t i = 0; i < cfg.T_list.size(); ++i) {
    ratios.push_back(number_array(rep.ratios[i]));
    ratios_c.push_back(number_array(rep.ratios_corollary[i]));
  }
  o.results = {{"max_ratio", number_array(rep.max_ratio)},
               {"max_ratio_corollary", number_array(rep.max_ratio_corollary)},
               {"spread", std::isfinite(rep.spread) ? Json(rep.spread) : Json(nullptr)},
               {"skipped", rep.skipped},
               {"all_finite", rep.all_finite},
               {"ratios", ratios},
               {"ratios_corollary", ratios_c}};
  o.checks = {{"all_finite", rep.all_finite, rep.all_finite ? 1.0 : 0.0, 1.0},
              below("max_ratio_spread", std::isfinite(rep.spread) ? rep.spread : 1e308, a.spread_limit)};
  o.table.columns = {"T", "instance", "ratio", "ratio_corollary"};
  for (std::size_t i = 0; i < cfg.T_list.size(); ++i)
    for (std::size_t j = 0; j < cfg.n_instances; ++j)
      o.table.rows.push_back({cfg.T_list[i], j, rep.ratios[i][j], rep.ratios_corollary[i][j]});
  return o;
}

// ---- interp -----------------------------------------------------------------

struct InterpArgs {
  double rho = 1.0;
  double gamma = 0.5;
  int calibration = 3000;
  int test = 50;
  std::uint64_t calibration_seed = 1000000;
  std::uint64_t seed = 0;
  int nx = 41;
  int nt = 41;
};

Outcome run_interp(const InterpArgs& a) {
  if (a.calibration < 1 || a.test < 1) throw InvalidArgument("corpus sizes must be positive");
  InterpolationStudyConfig cfg;
  cfg.rho = a.rho;
  cfg.gamma = a.gamma;
  cfg.calibration_count = static_cast<std::size_t>(a.calibration);
  cfg.test_count = static_cast<std::size_t>(a.test);
  cfg.calibration_seed = a.calibration_seed;
  cfg.test_seed = a.seed;
  cfg.nx = static_cast<std::size_t>(a.nx);
  cfg.nt = static_cast<std::size_t>(a.nt);
  const auto st = interpolation_study(cfg);
  Outcome o;
  o.config = {{"rho", a.rho}, {"gamma", a.gamma}, {"calibration", a.calibration}, {"test", a.test},
              {"calibration_seed", a.calibration_seed}, {"seed", a.seed}, {"nx", a.nx}, {"nt", a.nt}};
  Json lines = Json::array(), violations = Json::array();
  o.table.columns = {"line", "power", "constant", "per_line_constant"};
  for (std::size_t i = 0; i < st.report.lines.size(); ++i) {
    const auto& l = st.report.lines[i];
    lines.push_back({{"key", l.key()}, {"power", l.power}, {"constant", st.report.constants[i]},
                     {"per_line_constant", st.per_line_constants[i]}});
    o.table.rows.push_back({l.key(), l.power, st.report.constants[i], st.per_line_constants[i]});
  }
  for (const auto& v : st.report.violations)
    violations.push_back({{"function", v.function}, {"line", v.line}, {"eps", v.eps}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  o.results = {{"constant_theorem", st.constant_theorem}, {"constant_temporal", st.constant_temporal},
               {"eps", number_array(st.report.eps)},     {"lines", lines},
               {"checks", st.report.checks},             {"violations", violations}};
  o.checks = {at_most("violations", static_cast<double>(st.report.violations.size()), 0.0)};
  return o;
}

// ---- norms ------------------------------------------------------------------

struct NormsArgs {
  std::string input;
  double gamma = 0.5;
  int m = 0;
  std::optional<std::size_t> max_pairs;
  std::uint64_t seed = 0;
};

Outcome run_norms(const NormsArgs& a) {
  const auto u = read_grid_csv_file(a.input);
  const auto& g = u.grid();
  const auto all = Region::whole(g);
  SeminormOptions opts;
  opts.max_pairs = a.max_pairs;
  opts.seed = a.seed;
  const auto sp = spatial_seminorm_witness(u, a.gamma, all, opts);
  const auto tp = temporal_seminorm_witness(u, a.gamma / 4.0, all, opts);
  auto nullable = [](const std::function<double()>& f) -> Json {
    try {
      return f();
    } catch (const GridTooCoarse&) {
      return nullptr;
    }
  };
  Outcome o;
  Json axes = Json::array();
  for (const auto& ax : g.axes()) axes.push_back({{"origin", ax.origin}, {"spacing", ax.spacing}, {"count", ax.count}});
  o.config = {{"input", a.input}, {"gamma", a.gamma}, {"m", a.m},
              {"max_pairs", a.max_pairs ? Json(*a.max_pairs) : Json(nullptr)}, {"seed", a.seed},
              {"grid", {{"axes", axes}, {"times", number_array(g.times())}}}};
  auto witness = [&](const SeminormWitness& w) {
    const std::size_t ns = g.spatial_size();
    auto pt = [&](std::size_t flat) {
      return Json{{"x", number_array(g.point(flat % ns))}, {"t", g.time(flat / ns)}};
    };
    return Json{{"value", w.value}, {"first", pt(w.first)}, {"second", pt(w.second)}};
  };
  o.results = {{"sup", u.sup_norm()},
               {"spatial", witness(sp)},
               {"temporal", witness(tp)},
               {"parabolic", nullable([&] { return parabolic_seminorm(u, {a.gamma, a.m}); })},
               {"d41", nullable([&] { return d41_seminorm(u, a.gamma); })},
               {"c41gamma", nullable([&] { return c41gamma_norm(u, a.gamma); })}};
  o.table.columns = {"quantity", "value"};
  for (const char* key : {"sup", "parabolic", "d41", "c41gamma"}) o.table.rows.push_back({key, o.results[key]});
  o.table.rows.push_back({"spatial", sp.value});
  o.table.rows.push_back({"temporal", tp.value});
  return o;
}

// ---- cover ------------------------------------------------------------------

struct CoverArgs {
  std::string V = "-1,1";
  std::string Vp = "-2,2";
  double T0 = 1.0;
  double T = 1.0;
  bool boundary = false;
  int audit = 10000;
  std::uint64_t seed = 0;
};

Box parse_box(const std::string& text) {
  const auto v = parse_number_list(text);
  if (v.empty() || v.size() % 2) throw InvalidArgument("box needs lo,hi pairs");
  Box b;
  for (std::size_t i = 0; i < v.size(); i += 2) b.lo.push_back(v[i]), b.hi.push_back(v[i + 1]);
  return b;
}

Outcome run_cover(const CoverArgs& a) {
  const auto cov = build_covering(parse_box(a.V), parse_box(a.Vp), a.T0, a.T,
                                  a.boundary ? BoundaryMode::HalfSpace : BoundaryMode::Interior);
  const auto audit = audit_covering(cov, static_cast<std::size_t>(a.audit), a.seed);
  Outcome o;
  o.config = {{"V", a.V}, {"Vp", a.Vp}, {"T0", a.T0}, {"T", a.T}, {"boundary", a.boundary}, {"audit", a.audit},
              {"seed", a.seed}};
  Json forms = Json::object();
  for (const auto& [k, v] : cov.form_counts()) forms[k] = v;
  o.results = {{"rho", cov.rho},
               {"N", cov.N()},
               {"k0", cov.k0},
               {"pieces", cov.piece_count()},
               {"forms", forms},
               {"audit",
                {{"samples", audit.samples},
                 {"containment_violations", audit.containment_violations},
                 {"form_violations", audit.form_violations},
                 {"cover_violations", audit.cover_violations},
                 {"pieces_touch_both_ends", audit.pieces_touch_both_ends}}}};
  o.checks = {at_most("containment", static_cast<double>(audit.containment_violations), 0.0),
              at_most("forms", static_cast<double>(audit.form_violations), 0.0),
              at_most("cover", static_cast<double>(audit.cover_violations), 0.0),
              {"no_piece_spans_whole_interval", !audit.pieces_touch_both_ends, audit.pieces_touch_both_ends ? 1.0 : 0.0, 0.0}};
  for (std::size_t a2 = 0; a2 < cov.V.dimension(); ++a2) o.table.columns.push_back("x" + std::to_string(a2 + 1));
  for (const auto& c : cov.centers) {
    std::vector<Json> row(c.begin(), c.end());
    o.table.rows.push_back(std::move(row));
  }
  return o;
}

// ---- reflect ----------------------------------------------------------------

struct ReflectArgs {
  int n = 2;
  double h = 0.05;
  int trials = 100;
  std::uint64_t seed = 0;
};

EllipticCoefficients random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> b(n * n), a(n * n, 0.0);
  for (auto& v : b) v = g(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = 0; k < n; ++k) a[i * n + j] += b[i * n + k] * b[j * n + k];
      if (i == j) a[i * n + j] += 0.5;
      a[j * n + i] = a[i * n + j];
    }
  return EllipticCoefficients(n, a);
}

Outcome run_reflect(const ReflectArgs& a) {
  if (a.n < 1 || a.n > 3) throw InvalidArgument("n must be 1, 2 or 3");
  if (!(a.h > 0.0) || a.h > 0.25) throw InvalidArgument("h must lie in (0, 0.25]");
  const auto n = static_cast<std::size_t>(a.n);
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  double inv_err = 0.0, invol_err = 0.0;
  for (int i = 0; i < a.trials; ++i) {
    const auto c = random_spd(rng, n);
    const auto b = reflected_coefficients(c);
    for (std::size_t k = 0; k < n * n; ++k)
      inv_err = std::max(inv_err, std::abs(b[k] - c.matrix()[k]) / std::max(1.0, c.lambda()));
    std::vector<double> x(n);
    for (auto& v : x) v = ux(rng);
    const auto back = reflection_map(c, reflection_map(c, x));
    for (std::size_t k = 0; k < n; ++k) invol_err = std::max(invol_err, std::abs(back[k] - x[k]) / (1 + std::abs(x[k])));
  }
  // manufactured even solution u = F + F o R
  const auto coeffs = random_spd(rng, n);
  auto F = [&](std::span<const double> x, double t) {
    const double xn = x[n - 1], x1 = n > 1 ? x[0] : 0.0;
    return std::exp(0.3 * x1 - 0.2 * xn) * std::sin(0.7 * xn + 0.4 + t) + 0.1 * x1 * xn * xn;
  };
  auto exact = [&](std::span<const double> x, double t) { return F(x, t) + F(reflection_map(coeffs, x), t); };
  Json levels = Json::array();
  Outcome o;
  o.table.columns = {"h", "jump0", "jump1", "jump2", "jump3"};
  o.checks = {at_most("coefficient_invariance", inv_err, 1e-12), at_most("involution", invol_err, 1e-12)};
  for (double h : {a.h, a.h / 2}) {
    std::vector<Axis> axes;
    for (std::size_t d = 0; d + 1 < n; ++d) axes.push_back(Axis::span(-1, 1, static_cast<std::size_t>(std::lround(2 / h)) + 1));
    axes.push_back(Axis::span(0, 1, static_cast<std::size_t>(std::lround(1 / h)) + 1));
    const auto u = GridFunction::sample(SpaceTimeGrid(axes, {0.0, 0.5}), exact);
    const auto ext = reflect_extend(u, coeffs);
    const auto& j = ext.report.jumps;
    const double worst = *std::max_element(j.begin(), j.end());
    levels.push_back({{"h", h}, {"jumps", number_array({j.begin(), j.end()})}, {"tolerance", 10 * h * h},
                      {"bc1_residual", ext.report.bc1_residual}, {"bc2_residual", ext.report.bc2_residual}});
    o.table.rows.push_back({h, j[0], j[1], j[2], j[3]});
    o.checks.push_back(below("jumps_h=" + std::to_string(h), worst, 10 * h * h));
  }
  o.config = {{"n", a.n}, {"spacing", a.h}, {"trials", a.trials}, {"seed", a.seed}};
  o.results = {{"coefficient_invariance_error", inv_err}, {"involution_error", invol_err},
               {"manufactured_coefficients", number_array(coeffs.matrix())}, {"levels", levels}};
  return o;
}

// ---- oracle1d ---------------------------------------------------------------

struct OracleArgs {
  int kmax = 4;
  int points = 401;
  double dt = 1e-4;
  double t = 0.1;
  bool no_forcing = false;
  double tol = 1e-4;
  double bc_tol = 1e-6;
  std::uint64_t seed = 0;
};

Outcome run_oracle(const OracleArgs& a) {
  if (a.points < 8) throw InvalidArgument("points must be at least 8");
  OracleConfig cfg;
  cfg.k_max = a.kmax;
  cfg.points = static_cast<std::size_t>(a.points);
  cfg.dt = a.dt;
  cfg.t_end = a.t;
  cfg.forcing = !a.no_forcing;
  cfg.seed = a.seed;
  const auto rep = interval_cross_check(cfg);
  Outcome o;
  o.config = {{"kmax", a.kmax}, {"points", a.points}, {"dt", a.dt}, {"t", a.t}, {"forcing", cfg.forcing},
              {"tol", a.tol}, {"bc_tol", a.bc_tol}, {"seed", a.seed}};
  o.results = {{"u0", number_array(rep.u0)},
               {"forcing_start", number_array(rep.forcing_start)},
               {"forcing_end", number_array(rep.forcing_end)},
               {"sup_difference", rep.sup_difference},
               {"bc_residual_d1", rep.bc_residual_d1},
               {"bc_residual_d3", rep.bc_residual_d3}};
  o.checks = {below("sup_difference", rep.sup_difference, a.tol), below("bc_residual_d1", rep.bc_residual_d1, a.bc_tol),
              below("bc_residual_d3", rep.bc_residual_d3, a.bc_tol)};
  o.table.columns = {"x", "spectral", "finite_difference"};
  for (std::size_t i = 0; i < rep.x.size(); ++i)
    o.table.rows.push_back({rep.x[i], rep.spectral[i], rep.finite_difference[i]});
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parabolic Schauder-estimate experiments on the half-sphere"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path, format = "json";
  app.add_option("--out", out_path, "report file (default: stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::function<Outcome()> job;
  std::string command;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&, name] { command = name; });
    return s;
  };

  EigenArgs ea;
  auto* se = sub("eigen", "Neumann mode table");
  se->add_option("--lmax", ea.lmax);
  se->add_option("--points", ea.points, "random check points");
  se->add_option("--quad-order", ea.quad_order);
  se->add_option("--seed", ea.seed);

  DecayArgs da;
  auto* sd = sub("decay", "decay of the kernel-free part");
  sd->add_option("--mode", da.mode, "l2 or sup")->check(CLI::IsMember({"l2", "sup"}));
  sd->add_option("--u0", da.u0, "zero | single:l=,m=[,c=] | random:seed= | perp:seed= | coeffs:l=,m=,c=;...");
  sd->add_option("--tmax", da.tmax);
  sd->add_option("--samples", da.samples);
  sd->add_option("--lmax", da.lmax);
  sd->add_option("--slack", da.slack);
  sd->add_option("--seed", da.seed);

  ProbeArgs pa;
  auto* sp = sub("probe", "Schauder ratio probe");
  sp->add_option("--instances", pa.instances);
  sp->add_option("--T", pa.T, "comma separated horizons");
  sp->add_option("--lmax", pa.lmax);
  sp->add_option("--gamma", pa.gamma);
  sp->add_option("--chart-nodes", pa.chart_nodes);
  sp->add_option("--time-step", pa.time_step);
  sp->add_option("--spread-limit", pa.spread_limit);
  sp->add_option("--seed", pa.seed);

  InterpArgs ia;
  auto* si = sub("interp", "interpolation inequalities");
  si->add_option("--rho", ia.rho);
  si->add_option("--gamma", ia.gamma);
  si->add_option("--calibration", ia.calibration, "calibration corpus size");
  si->add_option("--test", ia.test, "test corpus size");
  si->add_option("--calibration-seed", ia.calibration_seed);
  si->add_option("--seed", ia.seed, "first test seed");
  si->add_option("--nx", ia.nx);
  si->add_option("--nt", ia.nt);

  NormsArgs na;
  std::size_t max_pairs = 0;
  auto* sn = sub("norms", "Hölder norms of a CSV grid function");
  sn->add_option("--input", na.input, "CSV with x1..xn,t,value")->required();
  sn->add_option("--gamma", na.gamma);
  sn->add_option("--m", na.m);
  auto* mp = sn->add_option("--max-pairs", max_pairs);
  sn->add_option("--seed", na.seed);

  CoverArgs ca;
  auto* sc = sub("cover", "T-uniform parabolic covering");
  sc->add_option("--V", ca.V, "lo1,hi1[,lo2,hi2...]");
  sc->add_option("--Vp", ca.Vp);
  sc->add_option("--T0", ca.T0);
  sc->add_option("--T", ca.T);
  sc->add_flag("--boundary", ca.boundary, "half-space covering");
  sc->add_option("--audit", ca.audit);
  sc->add_option("--seed", ca.seed);

  ReflectArgs ra;
  auto* sr = sub("reflect", "reflection across the boundary");
  sr->add_option("--n", ra.n);
  sr->add_option("--spacing", ra.h, "normal grid spacing h (h/2 is run too)");
  sr->add_option("--trials", ra.trials);
  sr->add_option("--seed", ra.seed);

  OracleArgs oa;
  auto* so = sub("oracle1d", "interval oracle cross-check");
  so->add_option("--kmax", oa.kmax);
  so->add_option("--points", oa.points);
  so->add_option("--dt", oa.dt);
  so->add_option("--t", oa.t);
  so->add_flag("--no-forcing", oa.no_forcing);
  so->add_option("--tol", oa.tol);
  so->add_option("--bc-tol", oa.bc_tol);
  so->add_option("--seed", oa.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (*mp) na.max_pairs = max_pairs;

  Outcome o;
  try {
    if (command == "eigen") o = run_eigen(ea);
    else if (command == "decay") o = run_decay(da);
    else if (command == "probe") o = run_probe(pa);
    else if (command == "interp") o = run_interp(ia);
    else if (command == "norms") o = run_norms(na);
    else if (command == "cover") o = run_cover(ca);
    else if (command == "reflect") o = run_reflect(ra);
    else if (command == "oracle1d") o = run_oracle(oa);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream body;
  if (format == "csv") write_csv(body, o.config, o.table);
  else body << canonical_dump(report_json(command, o)) << '\n';
  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!(f << body.str())) {
      err << "error: cannot write " << out_path << '\n';
      return 1;
    }
  }
  const bool ok = all_passed(o.checks);
  if (!ok)
    for (const auto& c : o.checks)
      if (!c.passed) err << "violation: " << c.name << " = " << c.value << " (tolerance " << c.tolerance << ")\n";
  return ok ? 0 : 2;
}

}  // namespace schauder::cli
