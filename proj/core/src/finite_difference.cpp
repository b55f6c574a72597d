#include "schauder/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schauder/error.hpp"

namespace schauder {

namespace {

void collect_indices(std::size_t dim, int remaining, std::size_t axis, MultiIndex& cur,
                     std::vector<MultiIndex>& out) {
  if (axis + 1 == dim) {
    cur[axis] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[axis] = k;
    collect_indices(dim, remaining - k, axis + 1, cur, out);
  }
}

// Apply 1-D stencils along a strided line family.
void apply_along(std::span<const double> in, std::span<double> out, std::size_t line_count,
                 std::size_t length, const std::vector<std::size_t>& line_starts, std::size_t stride,
                 const std::vector<Stencil>& stencils, double scale = 1.0) {
  for (std::size_t l = 0; l < line_count; ++l) {
    const std::size_t base = line_starts[l];
    for (std::size_t i = 0; i < length; ++i) {
      const auto& st = stencils[i];
      double acc = 0.0;
      for (std::size_t w = 0; w < st.weights.size(); ++w)
        acc += st.weights[w] * in[base + (st.first + w) * stride];
      out[base + i * stride] = acc * scale;
    }
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(std::size_t dimension, int length) {
  std::vector<MultiIndex> out;
  if (dimension == 0 || length < 0) return out;
  MultiIndex cur(dimension, 0);
  collect_indices(dimension, length, 0, cur, out);
  return out;
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
  const std::size_t n = nodes.size();
  const auto m = static_cast<std::size_t>(order);
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

std::vector<Stencil> derivative_stencils(std::span<const double> nodes, int order) {
  const std::size_t n = nodes.size();
  std::vector<Stencil> out(n);
  if (order == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = Stencil{i, {1.0}};
    return out;
  }
  const auto width = static_cast<std::size_t>(order + 2);
  if (n < width)
    throw GridTooCoarse("derivative of order " + std::to_string(order) + " needs at least " +
                        std::to_string(width) + " points per axis, got " + std::to_string(n));
  // Central stencil of formal order 2: half-width floor((order + 1) / 2).
  const auto half = static_cast<std::size_t>((order + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = 0;
    std::size_t size = 0;
    if (i >= half && i + half < n) {
      first = i - half;
      size = 2 * half + 1;
    } else {
      size = width;
      first = i < half ? 0 : n - width;
    }
    // Weights on nodes rescaled to unit extent, then scaled back, so that
    // uniformly dilated grids get exactly dilated weights.
    const double scale = nodes[first + size - 1] - nodes[first];
    std::vector<double> local(size);
    for (std::size_t j = 0; j < size; ++j) local[j] = (nodes[first + j] - nodes[i]) / scale;
    auto w = fd_weights(0.0, local, order);
    const double f = std::pow(scale, -order);
    for (double& x : w) x *= f;
    out[i] = Stencil{first, std::move(w)};
  }
  return out;
}

GridFunction fd_derivative(const GridFunction& u, const MultiIndex& alpha, int time_order) {
  const auto& grid = u.grid();
  if (alpha.size() != grid.dimension())
    throw DimensionMismatch("multi-index length differs from grid dimension");
  if (time_order < 0 || time_order > 1) throw InvalidArgument("time order must be 0 or 1");
  const int total = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (total > 4) throw InvalidArgument("spatial derivative order must be at most 4");
  for (int a : alpha)
    if (a < 0) throw InvalidArgument("negative multi-index component");

  const std::size_t ns = grid.spatial_size();
  const std::size_t nt = grid.time_size();
  std::vector<double> cur(u.values().begin(), u.values().end());
  std::vector<double> next(cur.size());

  for (std::size_t a = 0; a < grid.dimension(); ++a) {
    if (alpha[a] == 0) continue;
    const auto& ax = grid.axis(a);
    // Integer nodes, sum, then divide by h^order: dilated grids give
    // exactly dilated results.
    std::vector<double> nodes(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) nodes[i] = static_cast<double>(i);
    const auto stencils = derivative_stencils(nodes, alpha[a]);
    const std::size_t stride = grid.stride(a);
    std::vector<std::size_t> starts;
    for (std::size_t k = 0; k < nt; ++k)
      for (std::size_t s = 0; s < ns; ++s)
        if (grid.axis_index(s, a) == 0) starts.push_back(k * ns + s);
    apply_along(cur, next, starts.size(), ax.count, starts, stride, stencils, std::pow(ax.spacing, -alpha[a]));
    cur.swap(next);
  }
  if (time_order > 0) {
    const auto stencils = derivative_stencils(grid.times(), time_order);
    std::vector<std::size_t> starts(ns);
    std::iota(starts.begin(), starts.end(), std::size_t{0});
    apply_along(cur, next, ns, nt, starts, ns, stencils);
    cur.swap(next);
  }
  return GridFunction(grid, std::move(cur));
}

}  // namespace schauder
