#include "schauder/reflection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

EllipticCoefficients::EllipticCoefficients(std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {
  if (n_ == 0 || a_.size() != n_ * n_) throw DimensionMismatch("coefficient matrix must be n x n");
  Eigen::MatrixXd m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (std::abs(a_[i * n_ + j] - a_[j * n_ + i]) > 1e-12) throw InvalidArgument("coefficient matrix is not symmetric");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a_[i * n_ + j];
      lambda_ = std::max(lambda_, std::abs(a_[i * n_ + j]));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  theta_ = es.eigenvalues().minCoeff();
  if (!(theta_ > 0.0)) throw InvalidArgument("coefficient matrix is not elliptic");
}

EllipticCoefficients EllipticCoefficients::identity(std::size_t n) {
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
  return EllipticCoefficients(n, std::move(a));
}

std::vector<double> EllipticCoefficients::reflection_vector() const {
  std::vector<double> v(n_);
  const double ann = (*this)(n_ - 1, n_ - 1);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(n_ - 1, i) / ann;
  return v;
}

std::vector<double> reflection_map(const EllipticCoefficients& a, std::span<const double> x) {
  if (x.size() != a.dimension()) throw DimensionMismatch("point and coefficients differ in dimension");
  const auto v = a.reflection_vector();
  const double xn = x.back();
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= 2.0 * xn * v[i];
  // v_n = 1 exactly; keep the normal coordinate exact.
  y.back() = -xn;
  return y;
}

std::vector<double> reflected_coefficients(const EllipticCoefficients& a) {
  const std::size_t n = a.dimension();
  const auto v = a.reflection_vector();
  auto J = [&](std::size_t i, std::size_t j) { return (i == j ? 1.0 : 0.0) - (j == n - 1 ? 2.0 * v[i] : 0.0); };
  std::vector<double> out(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += J(p, i) * a(i, j) * J(q, j);
      out[p * n + q] = acc;
    }
  return out;
}

std::pair<double, double> boundary_residuals(const GridFunction& u, const EllipticCoefficients& a) {
  const auto& grid = u.grid();
  const std::size_t n = grid.dimension();
  if (n != a.dimension()) throw DimensionMismatch("grid and coefficients differ in dimension");
  std::vector<double> b1(grid.size(), 0.0), b2(grid.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    MultiIndex alpha(n, 0);
    alpha[i] = 1;
    const auto d = fd_derivative(u, alpha, 0);
    for (std::size_t p = 0; p < grid.size(); ++p) b1[p] += a(n - 1, i) * d.values()[p];
  }
  // sum_{i,k,l} a^{ni} a^{kl} d_ikl, grouped by multi-index.
  for (const auto& alpha : multi_indices(n, 3)) {
    double coeff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          MultiIndex m(n, 0);
          ++m[i];
          ++m[k];
          ++m[l];
          if (m == alpha) coeff += a(n - 1, i) * a(k, l);
        }
    if (coeff == 0.0) continue;
    const auto d = fd_derivative(u, alpha, 0);
    for (std::size_t p = 0; p < grid.size(); ++p) b2[p] += coeff * d.values()[p];
  }
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t k = 0; k < grid.time_size(); ++k)
    for (std::size_t s = 0; s < grid.spatial_size(); ++s) {
      if (grid.axis_index(s, n - 1) != 0) continue;
      r1 = std::max(r1, std::abs(b1[k * grid.spatial_size() + s]));
      r2 = std::max(r2, std::abs(b2[k * grid.spatial_size() + s]));
    }
  return {r1, r2};
}

namespace {

// Lagrange weights at x on `p` consecutive nodes of `ax`, stencil clamped to
// the axis; x itself is clamped to the axis range.
std::pair<std::size_t, std::vector<double>> lagrange(const Axis& ax, double x, std::size_t p) {
  p = std::min(p, ax.count);
  x = std::clamp(x, ax.origin, ax.back());
  const double pos = (x - ax.origin) / ax.spacing;
  long first = static_cast<long>(std::floor(pos)) - static_cast<long>(p / 2) + 1;
  first = std::clamp(first, 0L, static_cast<long>(ax.count - p));
  std::vector<double> w(p, 1.0);
  for (std::size_t i = 0; i < p; ++i) {
    const double xi = static_cast<double>(first) + static_cast<double>(i);
    for (std::size_t j = 0; j < p; ++j) {
      if (j == i) continue;
      const double xj = static_cast<double>(first) + static_cast<double>(j);
      w[i] *= (pos - xj) / (xi - xj);
    }
  }
  return {static_cast<std::size_t>(first), w};
}

}  // namespace

Extension reflect_extend(const GridFunction& u, const EllipticCoefficients& a, std::optional<double> tolerance) {
  const auto& grid = u.grid();
  const std::size_t n = grid.dimension();
  if (n != a.dimension()) throw DimensionMismatch("grid and coefficients differ in dimension");
  const Axis& nax = grid.axis(n - 1);
  if (std::abs(nax.origin) > 1e-12 * nax.spacing) throw InvalidArgument("normal axis must start at x_n = 0");
  if (nax.count < 6) throw GridTooCoarse("reflection needs at least 6 points along x_n");

  double hmax = 0.0;
  for (const auto& ax : grid.axes()) hmax = std::max(hmax, ax.spacing);
  MatchReport rep;
  rep.tolerance = tolerance.value_or(50.0 * hmax * hmax * (1.0 + u.sup_norm()));
  std::tie(rep.bc1_residual, rep.bc2_residual) = boundary_residuals(u, a);
  if (rep.bc1_residual > rep.tolerance || rep.bc2_residual > rep.tolerance)
    throw BoundaryConditionError("boundary conditions violated: |B1 u| = " + std::to_string(rep.bc1_residual) +
                                 ", |B2 u| = " + std::to_string(rep.bc2_residual) +
                                 ", tolerance " + std::to_string(rep.tolerance));

  const std::size_t N = nax.count;
  std::vector<Axis> axes = grid.axes();
  axes.back() = Axis{-nax.back(), nax.spacing, 2 * N - 1};
  SpaceTimeGrid ext_grid(axes, grid.times());
  GridFunction ext(ext_grid);
  const auto v = a.reflection_vector();
  const std::size_t ns_in = grid.spatial_size();
  const std::size_t ns_out = ext_grid.spatial_size();
  constexpr std::size_t kInterp = 8;

  std::vector<double> x(n);
  for (std::size_t s = 0; s < ns_out; ++s) {
    ext_grid.point(s, x);
    const std::size_t in = ext_grid.axis_index(s, n - 1);
    // Source index along the normal axis and tangential interpolation.
    const std::size_t src_n = in >= N - 1 ? in - (N - 1) : (N - 1) - in;
    std::vector<std::pair<std::size_t, std::vector<double>>> tang(n - 1);
    const double xn = x[n - 1];
    for (std::size_t d = 0; d + 1 < n; ++d) {
      const double y = in >= N - 1 ? x[d] : x[d] - 2.0 * xn * v[d];
      if (in >= N - 1) {
        tang[d] = {ext_grid.axis_index(s, d), {1.0}};
      } else {
        tang[d] = lagrange(grid.axis(d), y, kInterp);
      }
    }
    // Tensor-product sum over tangential stencils.
    std::vector<std::size_t> cursor(n - 1, 0);
    for (std::size_t k = 0; k < grid.time_size(); ++k) {
      double acc = 0.0;
      std::fill(cursor.begin(), cursor.end(), 0);
      while (true) {
        double w = 1.0;
        std::size_t flat = src_n * grid.stride(n - 1);
        for (std::size_t d = 0; d + 1 < n; ++d) {
          w *= tang[d].second[cursor[d]];
          flat += (tang[d].first + cursor[d]) * grid.stride(d);
        }
        acc += w * u.values()[k * ns_in + flat];
        std::size_t d = 0;
        while (d + 1 < n) {
          if (++cursor[d] < tang[d].second.size()) break;
          cursor[d] = 0;
          ++d;
        }
        if (d + 1 >= n) break;
      }
      ext(s, k) = acc;
    }
  }

  // One-sided k-th normal derivatives at x_n = 0 from both sides, k + 3 nodes,
  // on boundary points whose reflected stencil stays inside the tangential range.
  rep.normal_spacing = nax.spacing;
  std::vector<char> in_range(ns_out, 1);
  for (std::size_t s = 0; s < ns_out; ++s) {
    ext_grid.point(s, x);
    const double depth = 5.0 * nax.spacing;
    for (std::size_t d = 0; d + 1 < n; ++d) {
      const double y = x[d] + 2.0 * depth * std::abs(v[d]);
      const double z = x[d] - 2.0 * depth * std::abs(v[d]);
      const Axis& ax = grid.axis(d);
      if (y > ax.back() + 1e-12 || z < ax.origin - 1e-12) in_range[s] = 0;
    }
  }
  for (int k = 0; k <= 3; ++k) {
    const std::size_t width = static_cast<std::size_t>(k) + 3;
    std::vector<double> right(width), left(width);
    for (std::size_t i = 0; i < width; ++i) {
      right[i] = static_cast<double>(i);
      left[i] = -static_cast<double>(i);
    }
    const auto wr = fd_weights(0.0, right, k);
    const auto wl = fd_weights(0.0, left, k);
    const double scale = std::pow(nax.spacing, -k);
    double worst = 0.0;
    for (std::size_t s = 0; s < ns_out; ++s) {
      if (ext_grid.axis_index(s, n - 1) != N - 1) continue;
      if (!in_range[s]) continue;
      for (std::size_t t = 0; t < grid.time_size(); ++t) {
        double dr = 0.0, dl = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
          dr += wr[i] * ext(s + i * ext_grid.stride(n - 1), t);
          dl += wl[i] * ext(s - i * ext_grid.stride(n - 1), t);
        }
        worst = std::max(worst, std::abs(dr - dl) * scale);
      }
    }
    rep.jumps[static_cast<std::size_t>(k)] = worst;
  }
  return Extension{std::move(ext), rep};
}

GridFunction difference_quotient(const GridFunction& u, std::span<const std::size_t> dirs, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("difference step must be positive");
  GridFunction cur = u;
  for (std::size_t dir : dirs) {
    const auto& grid = cur.grid();
    if (dir >= grid.dimension()) throw DimensionMismatch("direction exceeds grid dimension");
    const Axis& ax = grid.axis(dir);
    const double ratio = eps / ax.spacing;
    const double steps_f = std::round(ratio);
    if (steps_f < 1.0 || std::abs(ratio - steps_f) > 1e-9 * std::max(1.0, ratio))
      throw InvalidArgument("eps = " + std::to_string(eps) + " is not a multiple of the grid spacing " +
                            std::to_string(ax.spacing));
    const auto steps = static_cast<std::size_t>(steps_f);
    if (steps >= ax.count) throw GridTooCoarse("difference step leaves no grid points");
    std::vector<Axis> axes = grid.axes();
    axes[dir].count -= steps;
    SpaceTimeGrid out_grid(axes, grid.times());
    GridFunction out(out_grid);
    const std::size_t ns_in = grid.spatial_size();
    const std::size_t ns_out = out_grid.spatial_size();
    for (std::size_t s = 0; s < ns_out; ++s) {
      std::size_t flat = 0;
      for (std::size_t d = 0; d < grid.dimension(); ++d) flat += out_grid.axis_index(s, d) * grid.stride(d);
      const std::size_t shifted = flat + steps * grid.stride(dir);
      for (std::size_t k = 0; k < grid.time_size(); ++k)
        out(s, k) = (cur.values()[k * ns_in + shifted] - cur.values()[k * ns_in + flat]) / eps;
    }
    cur = std::move(out);
  }
  return cur;
}

}  // namespace schauder
