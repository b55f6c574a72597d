#include "schauder/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBoundaryWindow = 41;
constexpr int kBoundaryDegree = 12;

// Weights of the p-th derivative at nodes[0] of the least-squares
// polynomial fit over the nodes, in a Chebyshev basis of the window.
std::vector<double> one_sided_weights(std::span<const double> nodes, int p) {
  const auto m = static_cast<long>(nodes.size());
  const double L = nodes.back() - nodes.front();
  Eigen::MatrixXd V(m, kBoundaryDegree + 1);
  for (long i = 0; i < m; ++i) {
    const double s = 2.0 * (nodes[i] - nodes.front()) / L - 1.0;
    for (int n = 0; n <= kBoundaryDegree; ++n) V(i, n) = std::cos(n * std::acos(std::clamp(s, -1.0, 1.0)));
  }
  Eigen::VectorXd e(kBoundaryDegree + 1);
  for (int n = 0; n <= kBoundaryDegree; ++n) {
    double d = ((n + p) % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < p; ++k) d *= (double(n) * n - double(k) * k) / (2.0 * k + 1.0);
    e(n) = d * std::pow(2.0 / L, p);
  }
  // w = V (V^T V)^{-1} e
  const Eigen::VectorXd w = V * (V.transpose() * V).ldlt().solve(e);
  return {w.data(), w.data() + m};
}

}  // namespace

double IntervalMode::value(double x) const { return derivative(x, 0); }

double IntervalMode::derivative(double x, int order) const {
  if (k == 0) return order == 0 ? 1.0 / std::sqrt(kPi) : 0.0;
  const double kk = static_cast<double>(k);
  return std::sqrt(2.0 / kPi) * std::pow(kk, order) * std::cos(kk * x + order * kPi / 2.0);
}

std::vector<IntervalMode> interval_modes(int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  std::vector<IntervalMode> out;
  for (int k = 0; k <= k_max; ++k) out.push_back({k, static_cast<double>(k) * k});
  return out;
}

std::vector<double> interval_nodes(std::size_t count) {
  if (count < 2) throw GridTooCoarse("need at least 2 nodes");
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = kPi * static_cast<double>(i) / static_cast<double>(count - 1);
  return x;
}

double trapezoid(std::span<const double> v, double h) {
  if (v.size() < 2) throw GridTooCoarse("trapezoid needs 2 values");
  double acc = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += v[i];
  return acc * h;
}

double interval_gram_deviation(const std::vector<IntervalMode>& modes, std::size_t points) {
  const auto x = interval_nodes(points);
  const double h = x[1] - x[0];
  double worst = 0.0;
  std::vector<double> prod(points);
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = a; b < modes.size(); ++b) {
      for (std::size_t i = 0; i < points; ++i) prod[i] = modes[a].value(x[i]) * modes[b].value(x[i]);
      worst = std::max(worst, std::abs(trapezoid(prod, h) - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<double> interval_project(const std::function<double(double)>& f, const std::vector<IntervalMode>& modes,
                                     std::size_t points) {
  const auto x = interval_nodes(points);
  const double h = x[1] - x[0];
  std::vector<double> fx(points), prod(points), out;
  for (std::size_t i = 0; i < points; ++i) fx[i] = f(x[i]);
  for (const auto& m : modes) {
    for (std::size_t i = 0; i < points; ++i) prod[i] = fx[i] * m.value(x[i]);
    out.push_back(trapezoid(prod, h));
  }
  return out;
}

double interval_value(const std::vector<IntervalMode>& modes, std::span<const double> coeffs, double x) {
  if (coeffs.size() != modes.size()) throw BasisMismatch("coefficient count differs from basis size");
  double acc = 0.0;
  for (std::size_t k = 0; k < modes.size(); ++k) acc += coeffs[k] * modes[k].value(x);
  return acc;
}

std::vector<double> interval_rates(const std::vector<IntervalMode>& modes) {
  std::vector<double> r;
  for (const auto& m : modes) r.push_back(m.eigenvalue * m.eigenvalue);
  return r;
}

IntervalTrajectory interval_evolve(const std::vector<IntervalMode>& modes, std::span<const double> u0,
                                   const PiecewiseLinearSignal& forcing, std::span<const double> t_grid) {
  const auto rates = interval_rates(modes);
  IntervalTrajectory tr;
  tr.times.assign(t_grid.begin(), t_grid.end());
  tr.coeffs = evolve_modes(rates, u0, forcing, t_grid);
  return tr;
}

std::pair<GridFunction, GridFunction> interval_grid_functions(const std::vector<IntervalMode>& modes,
                                                              std::span<const double> u0,
                                                              const PiecewiseLinearSignal& forcing, const Axis& axis,
                                                              std::span<const double> t_grid) {
  const auto tr = interval_evolve(modes, u0, forcing, t_grid);
  const auto rates = interval_rates(modes);
  const SpaceTimeGrid grid({axis}, tr.times);
  GridFunction u(grid), ut(grid);
  std::vector<double> dc(modes.size());
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    for (std::size_t m = 0; m < modes.size(); ++m)
      dc[m] = forcing.value(m, tr.times[k]) - rates[m] * tr.coeffs[k][m];
    for (std::size_t s = 0; s < axis.count; ++s) {
      u(s, k) = interval_value(modes, tr.coeffs[k], axis[s]);
      ut(s, k) = interval_value(modes, dc, axis[s]);
    }
  }
  return {std::move(u), std::move(ut)};
}

std::function<double(double, double)> interval_forcing_function(const std::vector<IntervalMode>& modes,
                                                                PiecewiseLinearSignal forcing) {
  return [modes, forcing = std::move(forcing)](double x, double t) {
    if (forcing.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t m = 0; m < modes.size(); ++m) acc += forcing.value(m, t) * modes[m].value(x);
    return acc;
  };
}

FdIntervalResult interval_fd_evolve(const std::function<double(double)>& u0,
                                    const std::function<double(double, double)>& forcing, std::size_t points,
                                    double dt, std::span<const double> t_grid) {
  if (points < 8) throw GridTooCoarse("finite-difference grid needs at least 8 nodes");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  std::vector<long> report_steps;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double s = t_grid[i] / dt;
    const long n = std::lround(s);
    if (n < 0 || std::abs(s - static_cast<double>(n)) > 1e-6) throw InvalidArgument("report times must be multiples of dt");
    if (i > 0 && n <= report_steps.back()) throw InvalidArgument("report times must increase");
    report_steps.push_back(n);
  }

  FdIntervalResult res;
  res.x = interval_nodes(points);
  const auto n = static_cast<long>(points);
  auto mirror = [n](long j) { return j < 0 ? -j : (j > n - 1 ? 2 * (n - 1) - j : j); };
  // extended precision: the stiff fourth difference amplifies rounding
  using Real = long double;
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const Real w[5] = {1, -4, 6, -4, 1};
  const Real hl = static_cast<Real>(std::numbers::pi_v<long double> / static_cast<long double>(points - 1));
  const Real h4 = hl * hl * hl * hl;
  const Real half_dt = static_cast<Real>(dt) / 2;
  Mat M = Mat::Identity(n, n);
  for (long i = 0; i < n; ++i)
    for (long d = -2; d <= 2; ++d) M(i, mirror(i + d)) += half_dt * w[d + 2] / h4;
  const Eigen::PartialPivLU<Mat> lhs(M);
  auto apply_A = [&](const Vec& v) {
    Vec out(n);
    for (long i = 0; i < n; ++i) {
      Real acc = 0;
      for (long d = -2; d <= 2; ++d) acc += w[d + 2] * v(mirror(i + d));
      out(i) = acc / h4;
    }
    return out;
  };

  const std::size_t window = std::min(points, kBoundaryWindow);
  const std::span<const double> left(res.x.data(), window);
  const auto w1 = window > static_cast<std::size_t>(kBoundaryDegree) ? one_sided_weights(left, 1) : fd_weights(0.0, left, 1);
  const auto w3 = window > static_cast<std::size_t>(kBoundaryDegree) ? one_sided_weights(left, 3) : fd_weights(0.0, left, 3);
  Vec u(n), f0(n), f1(n);
  for (long i = 0; i < n; ++i) u(i) = u0(res.x[i]);
  auto sample_forcing = [&](double t, Vec& out) {
    for (long i = 0; i < n; ++i) out(i) = forcing ? forcing(res.x[i], t) : 0.0;
  };
  auto check_bc = [&] {
    double d1l = 0, d1r = 0, d3l = 0, d3r = 0;
    for (std::size_t j = 0; j < window; ++j) {
      const long r = n - 1 - static_cast<long>(j);
      const auto ul = static_cast<double>(u(static_cast<long>(j))), ur = static_cast<double>(u(r));
      d1l += w1[j] * ul;
      d3l += w3[j] * ul;
      // mirrored stencil at pi: odd derivatives flip sign
      d1r -= w1[j] * ur;
      d3r -= w3[j] * ur;
    }
    res.bc_residual_d1 = std::max({res.bc_residual_d1, std::abs(d1l), std::abs(d1r)});
    res.bc_residual_d3 = std::max({res.bc_residual_d3, std::abs(d3l), std::abs(d3r)});
  };
  auto record = [&](double t) {
    res.times.push_back(t);
    std::vector<double> row(points);
    for (long i = 0; i < n; ++i) row[i] = static_cast<double>(u(i));
    res.values.push_back(std::move(row));
  };

  check_bc();
  std::size_t next = 0;
  while (next < report_steps.size() && report_steps[next] == 0) record(0.0), ++next;
  sample_forcing(0.0, f0);
  const long last = report_steps.empty() ? 0 : report_steps.back();
  for (long step = 1; step <= last; ++step) {
    const double t = static_cast<double>(step) * dt;
    sample_forcing(t, f1);
    // increment form: stiff rounding noise is damped by the solve
    u += lhs.solve(static_cast<Real>(dt) * ((f0 + f1) / 2 - apply_A(u)));
    f0.swap(f1);
    check_bc();
    if (report_steps[next] == step) record(t_grid[next]), ++next;
  }
  return res;
}

OracleReport interval_cross_check(const OracleConfig& cfg) {
  if (!(cfg.t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  const auto modes = interval_modes(cfg.k_max);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  OracleReport rep;
  rep.config = cfg;
  for (std::size_t k = 0; k < modes.size(); ++k) rep.u0.push_back(g(rng));
  rep.forcing_start.assign(modes.size(), 0.0);
  rep.forcing_end.assign(modes.size(), 0.0);
  if (cfg.forcing)
    for (std::size_t k = 0; k < modes.size(); ++k) rep.forcing_start[k] = g(rng), rep.forcing_end[k] = g(rng);
  PiecewiseLinearSignal signal;
  signal.times = {0.0, cfg.t_end};
  signal.rows = {rep.forcing_start, rep.forcing_end};

  const std::vector<double> t_grid{0.0, cfg.t_end};
  const auto spectral = interval_evolve(modes, rep.u0, signal, t_grid);
  const auto fd = interval_fd_evolve([&](double x) { return interval_value(modes, rep.u0, x); },
                                     interval_forcing_function(modes, signal), cfg.points, cfg.dt, t_grid);
  rep.x = fd.x;
  rep.finite_difference = fd.values.back();
  for (double x : rep.x) rep.spectral.push_back(interval_value(modes, spectral.coeffs.back(), x));
  for (std::size_t i = 0; i < rep.x.size(); ++i)
    rep.sup_difference = std::max(rep.sup_difference, std::abs(rep.spectral[i] - rep.finite_difference[i]));
  rep.bc_residual_d1 = fd.bc_residual_d1;
  rep.bc_residual_d3 = fd.bc_residual_d3;
  return rep;
}

}  // namespace schauder
