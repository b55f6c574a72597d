#include "schauder/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/holder.hpp"

namespace schauder {

// ---- decay ---------------------------------------------------------------

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

DecayReport decay_experiment(const SpectralField& u0, std::span<const double> t_grid, DecayNorm norm, int sup_order) {
  if (t_grid.empty() || t_grid.front() != 0.0) throw InvalidArgument("t_grid must start at 0");
  if (t_grid.back() < 1.0) throw InvalidArgument("t_grid must reach T >= 1");
  const EvolutionOperator op{OperatorKind::HalfDeltaDeltaPlus2};
  const auto traj = evolve(u0, nullptr, op, t_grid);

  std::vector<std::vector<double>> node_values;
  if (norm == DecayNorm::SupNodes) {
    const auto rule = quadrature(sup_order);
    for (const auto& p : rule.nodes) node_values.push_back(u0.basis->evaluate(p));
  }
  auto measure = [&](const SpectralField& f) {
    if (norm == DecayNorm::L2) return f.l2_norm();
    double best = 0.0;
    for (const auto& vals : node_values) {
      double acc = 0.0;
      for (std::size_t k = 0; k < vals.size(); ++k) acc += f.coeffs[k] * vals[k];
      best = std::max(best, std::abs(acc));
    }
    return best;
  };

  DecayReport rep;
  rep.times.assign(t_grid.begin(), t_grid.end());
  rep.zero_initial = std::all_of(u0.coeffs.begin(), u0.coeffs.end(), [](double c) { return c == 0.0; });
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto [par, perp] = split_parallel_perp(traj.states[i]);
    rep.parallel_norms.push_back(measure(par));
    rep.perp_norms.push_back(measure(perp));
    rep.total_norms.push_back(measure(traj.states[i]));
    rep.weighted_perp.push_back(std::exp(12.0 * rep.times[i]) * rep.perp_norms.back());
  }
  rep.plateau = rep.total_norms.back();

  const double p0 = rep.perp_norms.front();
  if (rep.zero_initial || !(p0 > 1e-13)) return rep;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    const double p = rep.perp_norms[i];
    if (p > 1e-13 && p >= 1e-10 * p0 && p <= 1e-1 * p0) xs.push_back(rep.times[i]), ys.push_back(std::log(p));
  }
  if (xs.size() < 2) {
    xs.clear();
    ys.clear();
    for (std::size_t i = 0; i < rep.times.size(); ++i)
      if (rep.perp_norms[i] > 1e-13) xs.push_back(rep.times[i]), ys.push_back(std::log(rep.perp_norms[i]));
  }
  if (xs.size() >= 2) {
    rep.fitted_rate = -least_squares_slope(xs, ys);
    rep.fit_points = xs.size();
  }
  return rep;
}

// ---- chart atlas ---------------------------------------------------------

Vec3 Chart::map(double a, double b) const {
  if (!boundary) return {a, b, std::sqrt(std::max(0.0, 1.0 - a * a - b * b))};
  return {std::cos(b) * std::cos(a), std::cos(b) * std::sin(a), std::sin(b)};
}

std::vector<Chart> halfsphere_atlas(std::size_t nodes) {
  if (nodes < 6) throw GridTooCoarse("chart grids need at least 6 nodes per axis");
  const double half = std::numbers::pi / 2 + 0.3;
  std::vector<Chart> out;
  out.push_back({"cap", false, Axis::span(-0.7, 0.7, nodes), Axis::span(-0.7, 0.7, nodes)});
  out.push_back({"band0", true, Axis::span(-half, half, nodes), Axis::span(0.0, 0.9, nodes)});
  out.push_back({"band1", true, Axis::span(std::numbers::pi - half, std::numbers::pi + half, nodes),
                 Axis::span(0.0, 0.9, nodes)});
  return out;
}

// ---- Schauder ratio probe --------------------------------------------------

namespace {

struct ChartSampler {
  SpaceTimeGrid space;
  std::vector<std::vector<double>> modes;  // per spatial node

  ChartSampler(const Chart& chart, const ModeBasis& basis) : space({chart.first, chart.second}, {0.0}) {
    for (std::size_t s = 0; s < space.spatial_size(); ++s) {
      const auto x = space.point(s);
      modes.push_back(basis.evaluate(chart.map(x[0], x[1])));
    }
  }

  GridFunction sample(const std::vector<double>& times, const std::vector<std::vector<double>>& coeffs) const {
    GridFunction g(SpaceTimeGrid(space.axes(), times));
    for (std::size_t k = 0; k < times.size(); ++k)
      for (std::size_t s = 0; s < modes.size(); ++s) {
        double acc = 0.0;
        for (std::size_t m = 0; m < modes[s].size(); ++m) acc += coeffs[k][m] * modes[s][m];
        g(s, k) = acc;
      }
    return g;
  }
};

}  // namespace

ProbeTerms probe_instance(const SpectralField& u0, const ForcingSignal& forcing, double T, const ProbeConfig& cfg) {
  if (!(T > 0.0)) throw InvalidArgument("T must be positive");
  if (!(cfg.time_step > 0.0)) throw InvalidArgument("time step must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(T / cfg.time_step));
  if (steps < 5) throw GridTooCoarse("probe needs at least 6 time samples");
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = T * static_cast<double>(k) / static_cast<double>(steps);

  const EvolutionOperator op{cfg.op};
  const auto traj = evolve(u0, &forcing, op, times);
  const auto dudt = time_derivative(traj, &forcing, op);
  std::vector<std::vector<double>> uc, utc, fc;
  ProbeTerms terms;
  for (std::size_t k = 0; k < times.size(); ++k) {
    uc.push_back(traj.states[k].coeffs);
    utc.push_back(dudt[k].coeffs);
    fc.push_back(forcing.at(times[k]).coeffs);
    terms.rhs_l2 = std::max(terms.rhs_l2, traj.states[k].l2_norm());
  }
  for (const auto& chart : halfsphere_atlas(cfg.chart_nodes)) {
    const ChartSampler sampler(chart, *u0.basis);
    const auto u = sampler.sample(times, uc);
    const auto ut = sampler.sample(times, utc);
    const auto f = sampler.sample(times, fc);
    const auto init = sampler.sample({0.0}, {u0.coeffs});
    terms.lhs = std::max(terms.lhs, c41gamma_norm(u, ut, cfg.gamma));
    terms.rhs_forcing = std::max(terms.rhs_forcing, c00gamma_norm(f, cfg.gamma));
    terms.rhs_initial = std::max(terms.rhs_initial, c4gamma_norm(init, cfg.gamma));
  }
  return terms;
}

std::pair<SpectralField, ForcingSignal> probe_random_instance(const BasisPtr& basis, const ProbeConfig& cfg,
                                                              std::size_t index) {
  std::mt19937_64 rng(cfg.seed * 1000003ULL + index);
  std::normal_distribution<double> g;
  auto draw = [&] {
    auto f = SpectralField::zero(basis);
    for (std::size_t k = 0; k < basis->size(); ++k) f.coeffs[k] = g(rng) / std::pow(1.0 + (*basis)[k].eigenvalue, 2.0);
    return f;
  };
  auto u0 = draw();
  ForcingSignal forcing;
  const double t_max = *std::max_element(cfg.T_list.begin(), cfg.T_list.end());
  const auto knots = static_cast<std::size_t>(std::ceil(t_max / cfg.forcing_knot_spacing - 1e-12));
  for (std::size_t i = 0; i <= knots; ++i) {
    forcing.times.push_back(static_cast<double>(i) * cfg.forcing_knot_spacing);
    forcing.samples.push_back(draw());
  }
  return {std::move(u0), std::move(forcing)};
}

ProbeReport schauder_ratio_probe(const ProbeConfig& cfg) {
  if (cfg.T_list.empty()) throw InvalidArgument("T list is empty");
  if (!(cfg.forcing_knot_spacing > 0.0)) throw InvalidArgument("forcing knot spacing must be positive");
  const auto basis = enumerate_modes(cfg.l_max);
  ProbeReport rep;
  rep.config = cfg;
  const std::size_t nT = cfg.T_list.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.ratios.assign(nT, std::vector<double>(cfg.n_instances, nan));
  rep.ratios_corollary = rep.ratios;
  rep.max_ratio.assign(nT, 0.0);
  rep.max_ratio_corollary.assign(nT, 0.0);
  rep.skipped.assign(nT, 0);
  rep.all_finite = true;
  for (std::size_t j = 0; j < cfg.n_instances; ++j) {
    const auto [u0, forcing] = probe_random_instance(basis, cfg, j);
    for (std::size_t i = 0; i < nT; ++i) {
      const auto t = probe_instance(u0, forcing, cfg.T_list[i], cfg);
      if (!(t.rhs() >= 1e-13)) {
        ++rep.skipped[i];
        continue;
      }
      const double r = t.lhs / t.rhs();
      const double rc = t.rhs_corollary() >= 1e-13 ? t.lhs / t.rhs_corollary() : nan;
      rep.ratios[i][j] = r;
      rep.ratios_corollary[i][j] = rc;
      if (!std::isfinite(r)) rep.all_finite = false;
      rep.max_ratio[i] = std::max(rep.max_ratio[i], r);
      if (std::isfinite(rc)) rep.max_ratio_corollary[i] = std::max(rep.max_ratio_corollary[i], rc);
    }
  }
  const auto [lo, hi] = std::minmax_element(rep.max_ratio.begin(), rep.max_ratio.end());
  rep.spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  return rep;
}

// ---- interpolation inequalities -------------------------------------------

std::string InterpolationLine::key() const {
  if (family == "grad") return "grad" + std::to_string(order);
  if (family == "dt") return "dt";
  if (family == "holder") return "holder" + std::to_string(order);
  return "time" + std::to_string(order) + "_" + std::to_string(order2);
}

std::vector<InterpolationLine> interpolation_lines(double gamma) {
  std::vector<InterpolationLine> out;
  for (int k = 0; k <= 4; ++k) out.push_back({"grad", k, 0, k / (4.0 - k + gamma)});
  out.push_back({"dt", 0, 0, 4.0 / gamma});
  for (int l = 0; l <= 3; ++l) out.push_back({"holder", l, 0, (l + gamma) / (4.0 - l)});
  for (int l = 0; l <= 3; ++l)
    for (int k = 0; k <= 3 - l; ++k) out.push_back({"time", l, k, (l + k + gamma) / (4.0 - l - k)});
  return out;
}

InterpolationMeasurement measure_interpolation(const GridFunction& u, const GridFunction& ut, double rho,
                                               double gamma, const std::vector<InterpolationLine>& lines) {
  const auto& grid = u.grid();
  const std::size_t n = grid.dimension();
  const Region all = Region::whole(grid);
  std::vector<std::vector<GridFunction>> derivs(5);
  for (int k = 0; k <= 4; ++k)
    for (const auto& alpha : multi_indices(n, k)) derivs[k].push_back(k == 0 ? u : fd_derivative(u, alpha, 0));

  InterpolationMeasurement m;
  m.sup = u.sup_norm();
  m.d41 = d41_seminorm(u, ut, gamma, all);
  for (const auto& line : lines) {
    double v = 0.0;
    if (line.family == "grad") {
      for (const auto& d : derivs[line.order]) v += d.sup_norm();
      v *= std::pow(rho, line.order);
    } else if (line.family == "dt") {
      v = std::pow(rho, 4) * ut.sup_norm();
    } else if (line.family == "holder") {
      for (const auto& d : derivs[line.order])
        v += spatial_seminorm(d, gamma, all) + temporal_seminorm(d, gamma / 4.0, all);
      v *= std::pow(rho, line.order + gamma);
    } else if (line.family == "time") {
      for (const auto& d : derivs[line.order]) v += temporal_seminorm(d, (line.order2 + gamma) / 4.0, all);
      v *= std::pow(rho, line.order + line.order2 + gamma);
    } else {
      throw InvalidArgument("unknown interpolation family " + line.family);
    }
    m.lhs.push_back(v);
  }
  return m;
}

std::vector<double> calibrate_interpolation(const std::vector<InterpolationMeasurement>& corpus,
                                            const std::vector<InterpolationLine>& lines, std::span<const double> eps,
                                            double rho, double gamma) {
  std::vector<double> c(lines.size(), 0.0);
  const double scale = std::pow(rho, 4.0 + gamma);
  for (const auto& m : corpus) {
    if (!(m.sup > 0.0)) continue;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (double e : eps) {
        const double need = (m.lhs[i] - e * scale * m.d41) / (std::pow(e, -lines[i].power) * m.sup);
        c[i] = std::max(c[i], need);
      }
  }
  return c;
}

std::vector<double> pool_constants(const std::vector<InterpolationLine>& lines, const std::vector<double>& per_line) {
  if (per_line.size() != lines.size()) throw DimensionMismatch("one constant per line expected");
  double theorem = 0.0, temporal = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double& c = lines[i].family == "time" ? temporal : theorem;
    c = std::max(c, per_line[i]);
  }
  std::vector<double> out(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) out[i] = lines[i].family == "time" ? temporal : theorem;
  return out;
}

InterpolationReport interpolation_check(const std::vector<InterpolationMeasurement>& corpus,
                                        const std::vector<InterpolationLine>& lines, const std::vector<double>& constants,
                                        std::span<const double> eps, double rho, double gamma) {
  if (constants.size() != lines.size()) throw DimensionMismatch("one constant per line expected");
  InterpolationReport rep;
  rep.lines = lines;
  rep.constants = constants;
  rep.eps.assign(eps.begin(), eps.end());
  const double scale = std::pow(rho, 4.0 + gamma);
  for (std::size_t f = 0; f < corpus.size(); ++f) {
    const auto& m = corpus[f];
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (double e : eps) {
        ++rep.checks;
        const double rhs = e * scale * m.d41 + constants[i] * std::pow(e, -lines[i].power) * m.sup;
        if (m.lhs[i] > rhs * (1.0 + 1e-12)) rep.violations.push_back({f, lines[i].key(), e, m.lhs[i], rhs});
      }
  }
  return rep;
}

SpaceTimeGrid ball_grid_1d(double rho, std::size_t nx, std::size_t nt) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  const double r4 = rho * rho * rho * rho;
  std::vector<double> ts(nt);
  for (std::size_t k = 0; k < nt; ++k) ts[k] = -r4 + 2.0 * r4 * static_cast<double>(k) / static_cast<double>(nt - 1);
  return SpaceTimeGrid({Axis::span(-rho, rho, nx)}, ts);
}

std::pair<GridFunction, GridFunction> band_limited_sample(const SpaceTimeGrid& grid, double rho, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> uw(0.0, 4.0), uv(0.0, 3.0), up(0.0, 2.0 * std::numbers::pi);
  constexpr int terms = 6;
  double a[terms], w[terms], v[terms], p[terms], q[terms];
  for (int j = 0; j < terms; ++j) a[j] = g(rng), w[j] = uw(rng), v[j] = uv(rng), p[j] = up(rng), q[j] = up(rng);
  const double r4 = rho * rho * rho * rho;
  auto u = GridFunction::sample(grid, [&](auto x, double t) {
    double s = 0.0;
    for (int j = 0; j < terms; ++j) s += a[j] * std::cos(w[j] * x[0] / rho + p[j]) * std::cos(v[j] * t / r4 + q[j]);
    return s;
  });
  auto ut = GridFunction::sample(grid, [&](auto x, double t) {
    double s = 0.0;
    for (int j = 0; j < terms; ++j)
      s -= a[j] * v[j] / r4 * std::cos(w[j] * x[0] / rho + p[j]) * std::sin(v[j] * t / r4 + q[j]);
    return s;
  });
  return {std::move(u), std::move(ut)};
}

std::vector<double> default_eps_list() { return {0.5, 0.25, 0.1, 0.05, 0.02, 0.01, 0.005}; }

InterpolationStudy interpolation_study(const InterpolationStudyConfig& cfg) {
  const bool disjoint = cfg.calibration_seed + cfg.calibration_count <= cfg.test_seed ||
                        cfg.test_seed + cfg.test_count <= cfg.calibration_seed;
  if (!disjoint) throw InvalidArgument("calibration and test corpora overlap");
  const auto grid = ball_grid_1d(cfg.rho, cfg.nx, cfg.nt);
  const auto lines = interpolation_lines(cfg.gamma);
  const auto eps = default_eps_list();
  auto corpus = [&](std::uint64_t seed0, std::size_t count) {
    std::vector<InterpolationMeasurement> out;
    for (std::size_t i = 0; i < count; ++i) {
      const auto [u, ut] = band_limited_sample(grid, cfg.rho, seed0 + i);
      out.push_back(measure_interpolation(u, ut, cfg.rho, cfg.gamma, lines));
    }
    return out;
  };
  InterpolationStudy study;
  study.config = cfg;
  study.per_line_constants =
      calibrate_interpolation(corpus(cfg.calibration_seed, cfg.calibration_count), lines, eps, cfg.rho, cfg.gamma);
  const auto pooled = pool_constants(lines, study.per_line_constants);
  for (std::size_t i = 0; i < lines.size(); ++i)
    (lines[i].family == "time" ? study.constant_temporal : study.constant_theorem) = pooled[i];
  study.report = interpolation_check(corpus(cfg.test_seed, cfg.test_count), lines, pooled, eps, cfg.rho, cfg.gamma);
  return study;
}

}  // namespace schauder
