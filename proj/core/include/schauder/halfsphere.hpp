#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace schauder {

using Vec3 = std::array<double, 3>;

/// Largest supported spherical-harmonic degree.
inline constexpr int kMaxDegree = 64;

/// Neumann eigenpair of the Laplace-Beltrami operator on the upper
/// half-sphere: an even real spherical harmonic (l + |m| even), scaled to
/// unit L^2 norm over the half-sphere.
struct Eigenmode {
  int degree = 0;
  int order = 0;
  double eigenvalue = 0.0;
  double normalization = 1.0;

  static Eigenmode make(int degree, int order);
  bool operator==(const Eigenmode&) const = default;
};

/// Modes ordered by eigenvalue, then (l, m) lexicographically. Index 0 is
/// the constant mode.
class ModeBasis {
 public:
  explicit ModeBasis(std::vector<Eigenmode> modes);

  const std::vector<Eigenmode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const Eigenmode& operator[](std::size_t k) const { return modes_[k]; }
  int max_degree() const { return max_degree_; }
  /// Index of mode (l, m); throws if absent.
  std::size_t index_of(int degree, int order) const;
  bool contains(int degree, int order) const;

  /// Values of every mode at a point of the sphere (even extension below
  /// the equator).
  void evaluate(const Vec3& point, std::span<double> out) const;
  std::vector<double> evaluate(const Vec3& point) const;

  bool operator==(const ModeBasis& other) const { return modes_ == other.modes_; }

 private:
  std::vector<Eigenmode> modes_;
  int max_degree_ = 0;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

/// All even-parity (l, m) with l <= l_max.
BasisPtr enumerate_modes(int l_max);

/// Mode value at a point of the closed upper half-sphere.
double eval_mode(const Eigenmode& mode, const Vec3& point);

/// Mode value anywhere on the sphere: the even reflection across the
/// equator of the half-sphere eigenfunction.
double eval_mode_extended(const Eigenmode& mode, const Vec3& point);

/// Point with polar angle theta (from the north pole) and azimuth phi.
Vec3 sphere_point(double theta, double phi);

/// Gauss-Legendre in cos(theta) over [0, 1] times a uniform azimuth rule.
struct QuadratureRule {
  int order = 0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
};

QuadratureRule quadrature(int order);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Coefficients of a function in a ModeBasis.
struct SpectralField {
  BasisPtr basis;
  std::vector<double> coeffs;

  static SpectralField zero(BasisPtr basis);
  static SpectralField unit(BasisPtr basis, std::size_t k);

  double value_at(const Vec3& point) const;
  double l2_norm() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Throws BasisMismatch unless both fields use the same basis.
void require_same_basis(const SpectralField& a, const SpectralField& b);

/// max |G - I|_F for the Gram matrix of `basis` under `rule`.
double gram_deviation(const ModeBasis& basis, const QuadratureRule& rule);

using SphereFunction = std::function<double(const Vec3&)>;

/// coeffs[k] = <phi_k, f> by quadrature. Throws QuadratureError if the rule
/// does not resolve the basis (Gram deviation above 1e-8).
SpectralField project(const SphereFunction& f, BasisPtr basis, const QuadratureRule& rule);

/// Kernel split for 1/2 Delta (Delta + 2): the parallel part keeps the
/// coefficients of modes (0,0), (1,-1), (1,1); perp = f - parallel.
std::pair<SpectralField, SpectralField> split_parallel_perp(const SpectralField& f);

/// Laplace-Beltrami of a sphere function by central differences in
/// (theta, phi) with step h.
double laplace_beltrami_fd(const SphereFunction& f, double theta, double phi, double h);

}  // namespace schauder
