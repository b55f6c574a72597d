#include "schauder/duhamel.hpp"

#include <algorithm>
#include <cmath>

#include "schauder/error.hpp"

namespace schauder {

double PiecewiseLinearSignal::value(std::size_t mode, double t) const {
  if (times.empty()) return 0.0;
  if (t <= times.front()) return rows.front()[mode];
  if (t >= times.back()) return rows.back()[mode];
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  return (1.0 - w) * rows[lo][mode] + w * rows[hi][mode];
}

double duhamel_weight0(double rate, double dt) {
  const double x = rate * dt;
  if (std::abs(x) < 1e-8) return dt * (1.0 - x / 2.0 + x * x / 6.0);
  return -std::expm1(-x) / rate;
}

double duhamel_weight1(double rate, double dt) {
  const double x = rate * dt;
  if (std::abs(x) < 0.5) {
    // sum_n (-x)^n / (n! (n + 2))
    double term = 1.0;
    double acc = 0.5;
    for (int n = 1; n < 30; ++n) {
      term *= -x / n;
      acc += term / (n + 2);
    }
    return dt * dt * acc;
  }
  return (1.0 - std::exp(-x) * (1.0 + x)) / (rate * rate);
}

std::vector<std::vector<double>> evolve_modes(std::span<const double> rates, std::span<const double> initial,
                                              const PiecewiseLinearSignal& forcing,
                                              std::span<const double> t_grid) {
  const std::size_t nm = rates.size();
  if (initial.size() != nm) throw BasisMismatch("initial data and rates differ in length");
  for (const auto& row : forcing.rows)
    if (row.size() != nm) throw BasisMismatch("forcing sample has wrong number of modes");
  if (forcing.rows.size() != forcing.times.size()) throw InvalidArgument("forcing times and samples differ in count");
  for (std::size_t i = 1; i < forcing.times.size(); ++i)
    if (!(forcing.times[i] > forcing.times[i - 1])) throw InvalidArgument("forcing times must increase");
  if (t_grid.empty() || t_grid[0] != 0.0) throw InvalidArgument("time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0) throw InvalidArgument("negative time");
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("time grid must be strictly increasing");
  }

  std::vector<std::vector<double>> out;
  out.reserve(t_grid.size());
  std::vector<double> state(initial.begin(), initial.end());
  out.push_back(state);

  std::size_t knot = 0;
  double now = 0.0;
  auto advance = [&](double to) {
    const double dt = to - now;
    for (std::size_t k = 0; k < nm; ++k) {
      const double mu = rates[k];
      double next = std::exp(-mu * dt) * state[k];
      if (!forcing.empty()) {
        const double fa = forcing.value(k, now);
        const double fb = forcing.value(k, to);
        const double slope = (fb - fa) / dt;
        next += fb * duhamel_weight0(mu, dt) - slope * duhamel_weight1(mu, dt);
      }
      state[k] = next;
    }
    now = to;
  };

  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    while (knot < forcing.times.size() && forcing.times[knot] <= now) ++knot;
    while (knot < forcing.times.size() && forcing.times[knot] < t_grid[i]) {
      advance(forcing.times[knot]);
      ++knot;
    }
    advance(t_grid[i]);
    out.push_back(state);
  }
  return out;
}

}  // namespace schauder
