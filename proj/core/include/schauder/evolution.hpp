#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "schauder/duhamel.hpp"
#include "schauder/halfsphere.hpp"

namespace schauder {

enum class OperatorKind { BiLaplacian, HalfDeltaDeltaPlus2 };

/// L in d/dt u + L u = f, diagonal in the Neumann eigenbasis.
struct EvolutionOperator {
  OperatorKind kind = OperatorKind::BiLaplacian;

  /// lambda^2 for the bi-Laplacian, lambda (lambda - 2) / 2 for
  /// 1/2 Delta (Delta + 2).
  double mode_rate(double lambda) const;
  std::vector<double> rates(const ModeBasis& basis) const;
  std::string_view name() const;
};

std::optional<OperatorKind> parse_operator_kind(std::string_view name);

/// Spectral forcing samples, linear in time between samples.
struct ForcingSignal {
  std::vector<double> times;
  std::vector<SpectralField> samples;

  /// Forcing equal to `value` for all times.
  static ForcingSignal constant(const SpectralField& value);
  SpectralField at(double t) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;

  const SpectralField& last() const { return states.back(); }
};

/// Mode-wise semigroup plus Duhamel integral, exact for piecewise-linear
/// forcing. `forcing` may be null for the homogeneous problem.
Trajectory evolve(const SpectralField& u0, const ForcingSignal* forcing, const EvolutionOperator& op,
                  std::span<const double> t_grid);

/// d/dt of the solution at each trajectory time: f(t) - L u(t).
std::vector<SpectralField> time_derivative(const Trajectory& traj, const ForcingSignal* forcing,
                                           const EvolutionOperator& op);

/// Mean-zero solution of Delta^2 u = f: u_k = c_k / lambda_k^2, u_0 = 0.
/// Throws CompatibilityError if the constant-mode coefficient exceeds 1e-10.
SpectralField elliptic_solve(const SpectralField& f);

/// Applies Delta^2 mode-wise (multiplication by lambda_k^2).
SpectralField apply_bilaplacian(const SpectralField& u);

}  // namespace schauder
