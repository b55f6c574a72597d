#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace schauder {

/// Uniformly spaced coordinate axis: origin + i * spacing, i < count.
struct Axis {
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t count = 1;

  /// Axis with `count` points spanning [lo, hi]; a single point sits at lo.
  static Axis span(double lo, double hi, std::size_t count);

  double operator[](std::size_t i) const { return origin + static_cast<double>(i) * spacing; }
  double back() const { return (*this)[count - 1]; }
};

/// Axis-aligned product grid in space times an increasing list of times.
///
/// Spatial points are flattened row-major (last axis fastest).
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(std::vector<Axis> axes, std::vector<double> times);

  std::size_t dimension() const { return axes_.size(); }
  std::size_t spatial_size() const { return spatial_size_; }
  std::size_t time_size() const { return times_.size(); }
  std::size_t size() const { return spatial_size_ * times_.size(); }

  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t a) const { return axes_[a]; }
  const std::vector<double>& times() const { return times_; }
  double time(std::size_t k) const { return times_[k]; }

  std::size_t stride(std::size_t a) const { return strides_[a]; }
  /// Index along axis `a` of the flattened spatial point `s`.
  std::size_t axis_index(std::size_t s, std::size_t a) const {
    return (s / strides_[a]) % axes_[a].count;
  }
  std::vector<double> point(std::size_t s) const;
  void point(std::size_t s, std::span<double> out) const;

  /// Grid with every coordinate multiplied by `lambda` and times by lambda^4.
  SpaceTimeGrid rescaled(double lambda) const;

  bool operator==(const SpaceTimeGrid& other) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> times_;
  std::vector<std::size_t> strides_;
  std::size_t spatial_size_ = 1;
};

/// Samples u(x, t) on a SpaceTimeGrid. values()[k * spatial_size + s].
class GridFunction {
 public:
  GridFunction(SpaceTimeGrid grid, std::vector<double> values);
  explicit GridFunction(SpaceTimeGrid grid);

  using Sampler = std::function<double(std::span<const double> x, double t)>;
  static GridFunction sample(const SpaceTimeGrid& grid, const Sampler& f);

  const SpaceTimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator()(std::size_t s, std::size_t k) const {
    return values_[k * grid_.spatial_size() + s];
  }
  double& operator()(std::size_t s, std::size_t k) { return values_[k * grid_.spatial_size() + s]; }

  /// Largest absolute value.
  double sup_norm() const;

  /// Same values viewed on another grid of identical shape.
  GridFunction on_grid(SpaceTimeGrid grid) const;

 private:
  SpaceTimeGrid grid_;
  std::vector<double> values_;
};

/// Subset of grid samples: a spatial mask and a contiguous time-index range
/// [time_begin, time_end).
struct Region {
  std::vector<char> spatial_mask;
  std::size_t time_begin = 0;
  std::size_t time_end = 0;

  static Region whole(const SpaceTimeGrid& grid);
  std::size_t active_points() const;
};

}  // namespace schauder
