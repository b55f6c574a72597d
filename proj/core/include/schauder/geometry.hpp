#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schauder/grid.hpp"
#include "schauder/holder.hpp"

namespace schauder {

/// B_rho(x0) x (t0 - rho^4, t0 + rho^4), optionally cut by the closed
/// half-spaces t >= time_floor (time_above), t <= time_ceiling (time_below)
/// and x_n >= 0 (space_half).
struct ParabolicBall {
  SpaceTimePoint center;
  double radius = 1.0;
  bool time_above = false;
  bool time_below = false;
  bool space_half = false;
  double time_floor = 0.0;
  double time_ceiling = 0.0;

  /// "U", "U+", "U-", "U_+", "U+_+" or "U-_+".
  std::string form() const;
  /// Same truncations, new center and radius.
  ParabolicBall with(SpaceTimePoint c, double r) const;
};

bool ball_contains(const ParabolicBall& ball, const SpaceTimePoint& p);

/// Samples of `grid` that lie in `ball`.
Region ball_region(const SpaceTimeGrid& grid, const ParabolicBall& ball);

/// Axis-aligned box [lo, hi] in R^n.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dimension() const { return lo.size(); }
  bool contains(const std::vector<double>& x) const;
};

enum class BoundaryMode { Interior, HalfSpace };

/// T-uniform covering of V x [0, T] by truncated parabolic balls.
/// Pieces U_{jk,r} = U_r(x_j, t_k) cut to [0, T] (and to x_n >= 0 in
/// half-space mode) for r in {rho, 2 rho}.
struct Covering {
  Box V;
  Box Vp;
  double T0 = 0.0;
  double T = 0.0;
  BoundaryMode mode = BoundaryMode::Interior;
  double rho = 0.0;
  std::vector<std::vector<double>> centers;
  std::size_t k0 = 0;

  std::size_t N() const { return centers.size(); }
  std::size_t piece_count() const { return N() * (k0 + 1); }
  double time_knot(std::size_t k) const;
  ParabolicBall piece(std::size_t j, std::size_t k, double r) const;
  /// Number of enlarged pieces of each form.
  std::map<std::string, std::size_t> form_counts() const;
};

/// Throws InvalidArgument if T < T0, T0 <= 0, or V is not compactly
/// contained in V' (ignoring the face x_n = 0 in half-space mode).
Covering build_covering(const Box& V, const Box& Vp, double T0, double T, BoundaryMode mode);

struct CoveringAudit {
  std::size_t samples = 0;
  std::size_t containment_violations = 0;  // property (1)
  std::size_t form_violations = 0;         // property (2)
  std::size_t cover_violations = 0;        // property (3)
  bool pieces_touch_both_ends = false;
  bool ok() const {
    return containment_violations == 0 && form_violations == 0 && cover_violations == 0 &&
           !pieces_touch_both_ends;
  }
};

/// Monte-Carlo membership audit of the three covering properties.
CoveringAudit audit_covering(const Covering& cover, std::size_t samples, std::uint64_t seed);

struct SubadditivityReport {
  double spatial_lhs = 0.0;
  double spatial_sum = 0.0;
  double spatial_piece_max = 0.0;
  double temporal_lhs = 0.0;
  double temporal_sum = 0.0;
  double temporal_piece_max = 0.0;
  double sup_norm = 0.0;
  std::size_t pieces_used = 0;
  /// Smallest C with lhs <= N max + C sup (spatial) and lhs <= 4 max + C sup
  /// (temporal), next to the covering bounds 2 / rho^alpha, 2 / rho^(4 beta).
  double spatial_constant = 0.0;
  double temporal_constant = 0.0;
  double spatial_constant_bound = 0.0;
  double temporal_constant_bound = 0.0;
  bool holds = false;
  bool sharpened_holds = false;
};

/// Global seminorms over V x [0, T] against the sum over the rho-pieces.
/// `u` lives on a grid covering the pieces.
SubadditivityReport cover_subadditivity_check(const GridFunction& u, const Covering& cover, double alpha,
                                              double beta);

}  // namespace schauder
