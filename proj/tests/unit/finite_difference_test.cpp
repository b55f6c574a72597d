#include <doctest.h>

#include <cmath>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"

using namespace schauder;

namespace {

double max_abs_diff(const GridFunction& u, double value) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v - value));
  return m;
}

}  // namespace

TEST_CASE("multi-indices") {
  CHECK(multi_indices(1, 4).size() == 1);
  CHECK(multi_indices(2, 4).size() == 5);
  CHECK(multi_indices(3, 2).size() == 6);
  CHECK(multi_indices(2, 2).front() == MultiIndex{2, 0});
  CHECK(multi_indices(2, 0).size() == 1);
}

TEST_CASE("Fornberg weights reproduce the classic stencils") {
  const double nodes[] = {-1.0, 0.0, 1.0};
  const auto w1 = fd_weights(0.0, nodes, 1);
  CHECK(w1[0] == doctest::Approx(-0.5));
  CHECK(w1[1] == doctest::Approx(0.0));
  CHECK(w1[2] == doctest::Approx(0.5));
  const auto w2 = fd_weights(0.0, nodes, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  const double five[] = {-2, -1, 0, 1, 2};
  const auto w4 = fd_weights(0.0, five, 4);
  CHECK(w4[0] == doctest::Approx(1.0));
  CHECK(w4[1] == doctest::Approx(-4.0));
  CHECK(w4[2] == doctest::Approx(6.0));
}

TEST_CASE("derivative of a linear function") {
  SpaceTimeGrid g({Axis::span(0, 1, 9), Axis::span(-1, 1, 7)}, {0.0, 0.3, 0.5, 1.0});
  const auto u = GridFunction::sample(g, [](std::span<const double> x, double) { return x[0]; });
  CHECK(max_abs_diff(fd_derivative(u, {1, 0}, 0), 1.0) < 1e-12);
  CHECK(max_abs_diff(fd_derivative(u, {0, 1}, 0), 0.0) < 1e-12);
}

TEST_CASE("time derivative on non-uniform times") {
  SpaceTimeGrid g({Axis::span(0, 1, 5)}, {0.0, 0.1, 0.35, 0.4, 1.0});
  const auto u = GridFunction::sample(g, [](std::span<const double>, double t) { return t; });
  CHECK(max_abs_diff(fd_derivative(u, {0}, 1), 1.0) < 1e-12);
  const auto q = GridFunction::sample(g, [](std::span<const double>, double t) { return t * t; });
  const auto dq = fd_derivative(q, {0}, 1);
  for (std::size_t k = 0; k < g.time_size(); ++k) CHECK(dq(2, k) == doctest::Approx(2 * g.time(k)).epsilon(1e-10));
}

TEST_CASE("fourth derivative of a quartic is exactly 24") {
  SpaceTimeGrid g({Axis::span(-1, 2, 11), Axis::span(0, 1, 6)}, {0.0});
  const auto u = GridFunction::sample(g, [](std::span<const double> x, double) { return std::pow(x[0], 4); });
  // Oracle: direct evaluation of d^4/dx^4 x^4 = 24 at every node.
  CHECK(max_abs_diff(fd_derivative(u, {4, 0}, 0), 24.0) < 1e-8 * 24.0);
  CHECK(max_abs_diff(fd_derivative(u, {0, 4}, 0), 0.0) < 1e-8);
}

TEST_CASE("stencils are exact on polynomials of design degree") {
  SpaceTimeGrid g({Axis::span(0, 1, 8), Axis::span(0, 1, 8)}, {0.0});
  // Per axis the first-derivative stencils are exact to degree 2, the third-derivative ones to degree 4.
  const auto q = GridFunction::sample(
      g, [](std::span<const double> x, double) { return x[0] * x[0] * x[1] * x[1] + x[0] * x[1]; });
  const auto dxy = fd_derivative(q, {1, 1}, 0);
  for (std::size_t s = 0; s < g.spatial_size(); ++s) {
    const auto p = g.point(s);
    CHECK(dxy(s, 0) == doctest::Approx(4 * p[0] * p[1] + 1).epsilon(1e-10));
  }
  const auto u = GridFunction::sample(
      g, [](std::span<const double> x, double) { return x[0] * x[0] * x[0] * x[1] * x[1] + x[0] * x[1]; });
  const auto d32 = fd_derivative(u, {3, 1}, 0);
  for (std::size_t s = 0; s < g.spatial_size(); ++s) {
    const auto p = g.point(s);
    CHECK(d32(s, 0) == doctest::Approx(12 * p[1]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("too coarse grid is rejected") {
  SpaceTimeGrid g({Axis::span(0, 1, 5)}, {0.0, 1.0});
  GridFunction u(g);
  CHECK_NOTHROW(fd_derivative(u, {3}, 0));
  CHECK_THROWS_AS(fd_derivative(u, {4}, 0), GridTooCoarse);
  CHECK_THROWS_AS(fd_derivative(u, {0}, 1), GridTooCoarse);
  CHECK_THROWS_AS(fd_derivative(u, {0}, 2), InvalidArgument);
  CHECK_THROWS_AS(fd_derivative(u, {0, 1}, 0), DimensionMismatch);
}
