#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "schauder/grid.hpp"

namespace schauder {

/// Constant symmetric elliptic matrix a^{ij} with a xi.xi >= theta |xi|^2
/// and max |a^{ij}| <= Lambda.
class EllipticCoefficients {
 public:
  /// Row-major n x n matrix. Throws InvalidArgument unless symmetric to
  /// 1e-12 and positive definite; theta and Lambda are computed.
  EllipticCoefficients(std::size_t n, std::vector<double> a);
  static EllipticCoefficients identity(std::size_t n);

  std::size_t dimension() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& matrix() const { return a_; }
  double theta() const { return theta_; }
  double lambda() const { return lambda_; }

  /// v = sum_i a^{ni} / a^{nn} e_i.
  std::vector<double> reflection_vector() const;

 private:
  std::size_t n_;
  std::vector<double> a_;
  double theta_ = 0.0;
  double lambda_ = 0.0;
};

/// x - 2 x_n v.
std::vector<double> reflection_map(const EllipticCoefficients& a, std::span<const double> x);

/// J a J^T with J = I - 2 v e_n^T (the Jacobian of the reflection); equals
/// a for every admissible a.
std::vector<double> reflected_coefficients(const EllipticCoefficients& a);

/// Jumps of d_n^k (k = 0..3) of the extension across x_n = 0, maximised over
/// tangential points and times.
struct MatchReport {
  std::array<double, 4> jumps{};
  double normal_spacing = 0.0;
  double bc1_residual = 0.0;
  double bc2_residual = 0.0;
  double tolerance = 0.0;
};

struct Extension {
  GridFunction function;
  MatchReport report;
};

/// Boundary residuals max |a^{ni} d_i u| and max |a^{ni} a^{kl} d_ikl u| on x_n = 0.
std::pair<double, double> boundary_residuals(const GridFunction& u, const EllipticCoefficients& a);

/// Extends u from x_n >= 0 (the n-th axis must start at 0) to the mirrored
/// grid by u~(x, t) = u(x - 2 x_n v, t), interpolating tangentially.
/// Reflected points beyond the tangential range are clamped to it; jumps
/// are measured only where the reflected stencils stay in range.
/// Throws BoundaryConditionError if B1 u or B2 u exceeds the tolerance
/// (default 50 h^2 (1 + sup |u|), h the largest spacing).
Extension reflect_extend(const GridFunction& u, const EllipticCoefficients& a,
                         std::optional<double> tolerance = std::nullopt);

/// Iterated forward difference quotients D^eps_{i1} ... D^eps_{ik} u on the
/// grid shrunk so all shifted points stay inside. Throws InvalidArgument if
/// eps is not a positive multiple of the spacing along some direction.
GridFunction difference_quotient(const GridFunction& u, std::span<const std::size_t> dirs, double eps);

}  // namespace schauder
