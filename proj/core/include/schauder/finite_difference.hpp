#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "schauder/grid.hpp"

namespace schauder {

using MultiIndex = std::vector<int>;

/// All multi-indices of the given dimension and total length, in
/// lexicographically descending order of the first component.
std::vector<MultiIndex> multi_indices(std::size_t dimension, int length);

/// Finite-difference weights (Fornberg) for the `order`-th derivative at x0
/// using the given nodes.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// One stencil for one grid point: weights applied to nodes first..first+size-1.
struct Stencil {
  std::size_t first = 0;
  std::vector<double> weights;
};

/// Stencils for the `order`-th derivative at every node of a 1-D point set:
/// central (formal order 2) where it fits, shifted one-sided of the same
/// formal order near the ends. Throws GridTooCoarse if nodes.size() < order + 2.
std::vector<Stencil> derivative_stencils(std::span<const double> nodes, int order);

/// d^j/dt^j grad_alpha u by tensor-product finite differences.
GridFunction fd_derivative(const GridFunction& u, const MultiIndex& alpha, int time_order);

}  // namespace schauder
