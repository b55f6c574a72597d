#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schauder/evolution.hpp"
#include "schauder/grid.hpp"
#include "schauder/halfsphere.hpp"

namespace schauder {

// ---- decay ---------------------------------------------------------------

enum class DecayNorm { L2, SupNodes };

struct DecayReport {
  std::vector<double> times;
  std::vector<double> perp_norms;
  std::vector<double> parallel_norms;
  std::vector<double> total_norms;
  /// e^{12 t} ||u_perp(t)||.
  std::vector<double> weighted_perp;
  /// Least-squares slope of -log ||u_perp||; empty when undefined.
  std::optional<double> fitted_rate;
  std::size_t fit_points = 0;
  /// Total norm at the last time.
  double plateau = 0.0;
  bool zero_initial = false;
};

/// Evolves u0 under 1/2 Delta (Delta + 2) with f = 0. t_grid starts at 0 and
/// reaches at least 1. The rate is fitted on the times where the perp norm
/// lies in [1e-10, 1e-1] times its initial value (falling back to all times
/// with perp norm above 1e-13 if that window holds fewer than 2 samples).
/// SupNodes uses the nodes of `quadrature(order)`.
DecayReport decay_experiment(const SpectralField& u0, std::span<const double> t_grid, DecayNorm norm,
                             int sup_order = 24);

// ---- chart atlas ---------------------------------------------------------

/// Coordinate chart of the closed upper half-sphere on a uniform 2-D grid.
/// Boundary charts use (azimuth, elevation) with elevation >= 0 as the
/// normal coordinate.
struct Chart {
  std::string name;
  bool boundary = false;
  Axis first;
  Axis second;
  /// Cap: (a, b) -> (a, b, sqrt(1 - a^2 - b^2)).
  /// Band: (phi, e) -> (cos e cos phi, cos e sin phi, sin e).
  Vec3 map(double a, double b) const;
};

/// Polar cap |a|, |b| <= 0.7 plus two equatorial bands (azimuth centred at
/// 0 and pi, half-width pi/2 + 0.3, elevation in [0, 0.9]); `nodes` points
/// per axis.
std::vector<Chart> halfsphere_atlas(std::size_t nodes);

// ---- Schauder ratio probe --------------------------------------------------

struct ProbeConfig {
  std::uint64_t seed = 0;
  std::size_t n_instances = 100;
  int l_max = 4;
  std::vector<double> T_list{1.0, 2.0, 4.0, 8.0};
  double gamma = 0.5;
  std::size_t chart_nodes = 9;
  double time_step = 1.0 / 16.0;
  double forcing_knot_spacing = 0.5;
  OperatorKind op = OperatorKind::BiLaplacian;
};

struct ProbeTerms {
  double lhs = 0.0;            // max over charts of the C^{4,1,gamma} norm
  double rhs_forcing = 0.0;    // max over charts of the C^{0,0,gamma} norm of Pu
  double rhs_initial = 0.0;    // max over charts of the C^{4,gamma} norm of u(., 0)
  double rhs_l2 = 0.0;         // sup_t ||u(t)||_{L^2}
  double rhs() const { return rhs_forcing + rhs_initial + rhs_l2; }
  double rhs_corollary() const { return rhs_forcing + rhs_initial; }
};

/// Both sides for one instance on [0, T]; Pu is the forcing itself.
ProbeTerms probe_instance(const SpectralField& u0, const ForcingSignal& forcing, double T, const ProbeConfig& config);

/// Random instance `index`: coefficients N(0, 1) / (1 + lambda)^2 for u0 and
/// for the forcing knots at multiples of forcing_knot_spacing up to max(T_list).
std::pair<SpectralField, ForcingSignal> probe_random_instance(const BasisPtr& basis, const ProbeConfig& config,
                                                              std::size_t index);

struct ProbeReport {
  ProbeConfig config;
  /// ratios[i][j]: instance j at T_list[i] (theorem form); NaN if skipped.
  std::vector<std::vector<double>> ratios;
  std::vector<std::vector<double>> ratios_corollary;
  std::vector<double> max_ratio;
  std::vector<double> max_ratio_corollary;
  std::vector<std::size_t> skipped;
  /// max over T of max_ratio divided by min over T.
  double spread = 0.0;
  bool all_finite = false;
};

ProbeReport schauder_ratio_probe(const ProbeConfig& config);

// ---- interpolation inequalities -------------------------------------------

/// One inequality  lhs <= eps rho^{4+gamma} [D^{4,1} u] + C eps^{-power} ||u||.
/// family: "grad" (rho^k ||grad^k u||, k = order), "dt" (rho^4 ||u_t||),
/// "holder" (rho^{l+gamma} [grad^l u]^(0)_gamma, l = order), "time"
/// (rho^{l+k+gamma} [grad^l u]^time_{(k+gamma)/4}, l = order, k = order2).
struct InterpolationLine {
  std::string family;
  int order = 0;
  int order2 = 0;
  double power = 0.0;
  std::string key() const;
};

std::vector<InterpolationLine> interpolation_lines(double gamma);

/// Left sides, the D^{4,1} seminorm and the sup norm of one function on the
/// parabolic ball covered by its grid.
struct InterpolationMeasurement {
  std::vector<double> lhs;  // one per line
  double d41 = 0.0;
  double sup = 0.0;
};

InterpolationMeasurement measure_interpolation(const GridFunction& u, const GridFunction& ut, double rho,
                                               double gamma, const std::vector<InterpolationLine>& lines);

/// Smallest constant per line making every (function, eps) pair hold.
std::vector<double> calibrate_interpolation(const std::vector<InterpolationMeasurement>& corpus,
                                            const std::vector<InterpolationLine>& lines, std::span<const double> eps,
                                            double rho, double gamma);

/// Shares one constant per group: C(n) over the grad, dt and holder lines,
/// C(n, gamma) over the time lines.
std::vector<double> pool_constants(const std::vector<InterpolationLine>& lines, const std::vector<double>& per_line);

struct InterpolationViolation {
  std::size_t function = 0;
  std::string line;
  double eps = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct InterpolationReport {
  std::vector<InterpolationLine> lines;
  std::vector<double> constants;
  std::vector<double> eps;
  std::size_t checks = 0;
  std::vector<InterpolationViolation> violations;
};

InterpolationReport interpolation_check(const std::vector<InterpolationMeasurement>& corpus,
                                        const std::vector<InterpolationLine>& lines, const std::vector<double>& constants,
                                        std::span<const double> eps, double rho, double gamma);

/// Random band-limited function on the 1-D parabolic ball U_rho(0, 0),
/// sampled with its exact time derivative: sum over j < 6 of
/// a_j cos(w_j x / rho + p_j) cos(v_j t / rho^4 + q_j), w_j in [0, 4], v_j in [0, 3].
std::pair<GridFunction, GridFunction> band_limited_sample(const SpaceTimeGrid& grid, double rho, std::uint64_t seed);

/// Uniform grid of U_rho(0, 0) in one space dimension.
SpaceTimeGrid ball_grid_1d(double rho, std::size_t nx, std::size_t nt);

/// Default eps list in (0, eps0) with eps0 = 1.
std::vector<double> default_eps_list();

struct InterpolationStudyConfig {
  double rho = 1.0;
  double gamma = 0.5;
  std::size_t calibration_count = 3000;
  std::size_t test_count = 50;
  std::uint64_t calibration_seed = 1000000;
  std::uint64_t test_seed = 0;
  std::size_t nx = 41;
  std::size_t nt = 41;
};

/// Calibrates pooled constants on seeds [calibration_seed, +calibration_count)
/// and tests on [test_seed, +test_count); the seed ranges must not overlap.
struct InterpolationStudy {
  InterpolationStudyConfig config;
  std::vector<double> per_line_constants;
  double constant_theorem = 0.0;
  double constant_temporal = 0.0;
  InterpolationReport report;
};

InterpolationStudy interpolation_study(const InterpolationStudyConfig& config);

}  // namespace schauder
