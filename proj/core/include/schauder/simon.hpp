#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "schauder/geometry.hpp"

namespace schauder {

/// Set function on truncated parabolic balls Omega_r(p) = U_r(p) cap A.
using BallFunctional = std::function<double(const ParabolicBall&)>;

/// Number of Omega_{r1} balls used to cover any Omega_{r2}, q = r2 / r1 > 1:
/// a lattice of floor(2 q sqrt(n)) + 1 cells per spatial axis times
/// floor(16 q^4) + 1 time slots, each cell inside some U_{r1/2}.
std::size_t covering_number(std::size_t n, double ratio);

/// Centers q_i in A with Omega_{r2}(p) contained in the union of the
/// Omega_{r1}(q_i). `shape` carries the truncation flags of A; its center
/// and radius are ignored. At most covering_number(n, r2 / r1) points.
std::vector<SpaceTimePoint> cover_ball(const ParabolicBall& shape, const SpaceTimePoint& p, double r2, double r1);

/// Monte-Carlo check that the cover_ball centers cover Omega_{r2}(p).
std::size_t audit_cover_ball(const ParabolicBall& shape, const SpaceTimePoint& p, double r2, double r1,
                             std::size_t samples, std::uint64_t seed);

struct SimonConfig {
  ParabolicBall shape;  // truncation flags of A
  SpaceTimePoint p0;
  double R = 1.0;
  double k = 4.5;
  double nu = 0.75;
  double theta = 0.75;
  std::optional<double> delta;  // default 1 / (2 N(n, theta))
  std::optional<double> E;      // default: measured sup of the hypothesis slack
  double min_radius_fraction = 0.05;
  std::size_t hypothesis_samples = 200;
  std::size_t monotone_samples = 100;
  std::size_t subadditive_samples = 4;
  std::size_t cover_audit_samples = 2000;
  /// Radii of the subadditivity triples, as fractions of R.
  double subadditive_radius_lo = 0.5;
  double subadditive_radius_hi = 0.75;
  std::uint64_t seed = 0;
};

struct SimonReport {
  std::size_t N = 0;  // N(n, theta)
  std::size_t M = 0;  // M(n, nu, theta)
  double delta = 0.0;
  double delta_threshold = 0.0;
  double C = 0.0;
  double E = 0.0;
  double measured_slack = 0.0;
  std::size_t hypothesis_samples = 0;
  std::size_t hypothesis_violations = 0;
  std::size_t monotone_checked = 0;
  std::size_t monotone_violations = 0;
  std::size_t subadditive_checked = 0;
  std::size_t subadditive_violations = 0;
  std::size_t cover_audit_violations = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool audits_ok = false;
  bool holds = false;
};

/// Audits S for monotonicity and subadditivity, samples the hypothesis
///   rho^k S(Omega_{theta rho}(y)) <= delta rho^k S(Omega_rho(y)) + E
/// over sub-balls Omega_rho(y) of Omega_R(p0) with rho <= nu R, and
/// compares R^k S(Omega_{theta R}(p0)) with C E,
/// C = nu^-k M(n, nu, theta) 2 N(n, theta) / theta^k.
SimonReport simon_absorption_check(const BallFunctional& S, const SimonConfig& config);

}  // namespace schauder
