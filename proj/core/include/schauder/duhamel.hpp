#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace schauder {

/// Forcing coefficients sampled at increasing times, linear in between and
/// constant outside the sampled range. rows[i] holds one value per mode.
struct PiecewiseLinearSignal {
  std::vector<double> times;
  std::vector<std::vector<double>> rows;

  /// Interpolated coefficient of `mode` at time t.
  double value(std::size_t mode, double t) const;
  bool empty() const { return times.empty(); }
};

/// int_0^dt exp(-rate * tau) d tau, stable for small rate * dt.
double duhamel_weight0(double rate, double dt);
/// int_0^dt tau * exp(-rate * tau) d tau, stable for small rate * dt.
double duhamel_weight1(double rate, double dt);

/// Exact solution of c_k' = -rate_k c_k + f_k(t) for piecewise-linear f,
/// reported at each time of `t_grid` (t_grid[0] must be 0 and the grid
/// strictly increasing). Result[i][k] is mode k at t_grid[i].
std::vector<std::vector<double>> evolve_modes(std::span<const double> rates, std::span<const double> initial,
                                              const PiecewiseLinearSignal& forcing,
                                              std::span<const double> t_grid);

}  // namespace schauder
