#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "schauder/duhamel.hpp"
#include "schauder/grid.hpp"

namespace schauder {

/// Neumann eigenfunction of -d^2/dx^2 on [0, pi]: 1/sqrt(pi) for k = 0,
/// sqrt(2/pi) cos(k x) otherwise.
struct IntervalMode {
  int k = 0;
  double eigenvalue = 0.0;  // k^2

  double value(double x) const;
  /// order-th x-derivative.
  double derivative(double x, int order) const;
};

std::vector<IntervalMode> interval_modes(int k_max);

/// count uniform nodes on [0, pi], endpoints included.
std::vector<double> interval_nodes(std::size_t count);

/// Composite trapezoid rule on uniform nodes with spacing h.
double trapezoid(std::span<const double> values, double h);

/// max |G - I| entrywise, G the trapezoid Gram matrix on `points` nodes.
double interval_gram_deviation(const std::vector<IntervalMode>& modes, std::size_t points);

std::vector<double> interval_project(const std::function<double(double)>& f, const std::vector<IntervalMode>& modes,
                                     std::size_t points = 2049);

double interval_value(const std::vector<IntervalMode>& modes, std::span<const double> coeffs, double x);

/// Rates k^4 for d/dt u + d^4/dx^4 u = f.
std::vector<double> interval_rates(const std::vector<IntervalMode>& modes);

/// coeffs[i][k] = mode k at t_grid[i]; forcing rows are mode coefficients.
struct IntervalTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> coeffs;
};

IntervalTrajectory interval_evolve(const std::vector<IntervalMode>& modes, std::span<const double> u0,
                                   const PiecewiseLinearSignal& forcing, std::span<const double> t_grid);

/// u and u_t of a spectral interval trajectory sampled on `axis` x t_grid.
std::pair<GridFunction, GridFunction> interval_grid_functions(const std::vector<IntervalMode>& modes,
                                                              std::span<const double> u0,
                                                              const PiecewiseLinearSignal& forcing, const Axis& axis,
                                                              std::span<const double> t_grid);

/// f(x, t) from a modal forcing signal.
std::function<double(double, double)> interval_forcing_function(const std::vector<IntervalMode>& modes,
                                                                PiecewiseLinearSignal forcing);

struct FdIntervalResult {
  std::vector<double> x;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // one row per reported time
  /// max over all steps and both ends of the one-sided |u_x| and |u_xxx|.
  double bc_residual_d1 = 0.0;
  double bc_residual_d3 = 0.0;
};

/// Crank-Nicolson on `points` uniform nodes of [0, pi]; the 5-point
/// fourth-difference uses even ghost values u_{-j} = u_j (and likewise at
/// pi). Reports at t_grid, each a multiple of dt. forcing may be empty.
FdIntervalResult interval_fd_evolve(const std::function<double(double)>& u0,
                                    const std::function<double(double, double)>& forcing, std::size_t points,
                                    double dt, std::span<const double> t_grid);

struct OracleConfig {
  int k_max = 4;
  std::size_t points = 401;
  double dt = 1e-4;
  double t_end = 0.1;
  bool forcing = true;
  std::uint64_t seed = 0;
};

struct OracleReport {
  OracleConfig config;
  std::vector<double> u0;
  /// Forcing coefficients at t = 0 and t = t_end, linear in between.
  std::vector<double> forcing_start;
  std::vector<double> forcing_end;
  std::vector<double> x;
  std::vector<double> spectral;
  std::vector<double> finite_difference;
  double sup_difference = 0.0;
  double bc_residual_d1 = 0.0;
  double bc_residual_d3 = 0.0;
};

/// Random N(0, 1) data in modes k <= k_max, solved both ways.
OracleReport interval_cross_check(const OracleConfig& config);

}  // namespace schauder
