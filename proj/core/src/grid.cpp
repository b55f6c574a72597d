#include "schauder/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schauder/error.hpp"

namespace schauder {

Axis Axis::span(double lo, double hi, std::size_t count) {
  if (count == 0) throw InvalidArgument("axis needs at least one point");
  if (count == 1) return Axis{lo, 1.0, 1};
  if (!(hi > lo)) throw InvalidArgument("axis upper bound must exceed lower bound");
  return Axis{lo, (hi - lo) / static_cast<double>(count - 1), count};
}

SpaceTimeGrid::SpaceTimeGrid(std::vector<Axis> axes, std::vector<double> times)
    : axes_(std::move(axes)), times_(std::move(times)) {
  if (axes_.empty()) throw InvalidArgument("grid needs at least one spatial axis");
  if (times_.empty()) throw InvalidArgument("grid needs at least one time point");
  for (const auto& ax : axes_) {
    if (ax.count == 0) throw InvalidArgument("empty spatial axis");
    if (!(ax.spacing > 0.0) || !std::isfinite(ax.spacing))
      throw InvalidArgument("spatial spacing must be positive");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw InvalidArgument("time points must be strictly increasing");
  }
  strides_.assign(axes_.size(), 1);
  for (std::size_t a = axes_.size(); a-- > 0;) {
    strides_[a] = spatial_size_;
    spatial_size_ *= axes_[a].count;
  }
}

std::vector<double> SpaceTimeGrid::point(std::size_t s) const {
  std::vector<double> x(dimension());
  point(s, x);
  return x;
}

void SpaceTimeGrid::point(std::size_t s, std::span<double> out) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) out[a] = axes_[a][axis_index(s, a)];
}

SpaceTimeGrid SpaceTimeGrid::rescaled(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidArgument("rescaling factor must be positive");
  std::vector<Axis> axes = axes_;
  for (auto& ax : axes) {
    ax.origin *= lambda;
    ax.spacing *= lambda;
  }
  const double l4 = lambda * lambda * lambda * lambda;
  std::vector<double> times = times_;
  for (auto& t : times) t *= l4;
  return SpaceTimeGrid(std::move(axes), std::move(times));
}

bool SpaceTimeGrid::operator==(const SpaceTimeGrid& other) const {
  if (axes_.size() != other.axes_.size() || times_ != other.times_) return false;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const auto& l = axes_[a];
    const auto& r = other.axes_[a];
    if (l.origin != r.origin || l.spacing != r.spacing || l.count != r.count) return false;
  }
  return true;
}

GridFunction::GridFunction(SpaceTimeGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DimensionMismatch("value array has " + std::to_string(values_.size()) +
                            " entries, grid has " + std::to_string(grid_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("grid function values must be finite");
}

GridFunction::GridFunction(SpaceTimeGrid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

GridFunction GridFunction::sample(const SpaceTimeGrid& grid, const Sampler& f) {
  std::vector<double> values(grid.size());
  std::vector<double> x(grid.dimension());
  for (std::size_t k = 0; k < grid.time_size(); ++k) {
    for (std::size_t s = 0; s < grid.spatial_size(); ++s) {
      grid.point(s, x);
      values[k * grid.spatial_size() + s] = f(x, grid.time(k));
    }
  }
  return GridFunction(grid, std::move(values));
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::on_grid(SpaceTimeGrid grid) const {
  if (grid.size() != grid_.size() || grid.dimension() != grid_.dimension())
    throw DimensionMismatch("target grid shape differs");
  return GridFunction(std::move(grid), values_);
}

Region Region::whole(const SpaceTimeGrid& grid) {
  return Region{std::vector<char>(grid.spatial_size(), 1), 0, grid.time_size()};
}

std::size_t Region::active_points() const {
  const auto n = static_cast<std::size_t>(std::count(spatial_mask.begin(), spatial_mask.end(), 1));
  return time_end > time_begin ? n * (time_end - time_begin) : 0;
}

}  // namespace schauder
