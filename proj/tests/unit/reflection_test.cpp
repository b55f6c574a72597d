#include <doctest.h>

#include <cmath>
#include <random>

#include "schauder/error.hpp"
#include "schauder/reflection.hpp"

using namespace schauder;

namespace {

EllipticCoefficients random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> b(n * n), a(n * n, 0.0);
  for (auto& v : b) v = g(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a[i * n + j] += b[i * n + k] * b[j * n + k];
      if (i == j) a[i * n + j] += 0.5;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a[i * n + j] = a[j * n + i];
  return EllipticCoefficients(n, a);
}

SpaceTimeGrid half_grid(double h) {
  const auto nx = static_cast<std::size_t>(std::lround(2.0 / h)) + 1;
  const auto ny = static_cast<std::size_t>(std::lround(1.0 / h)) + 1;
  return SpaceTimeGrid({Axis::span(-1, 1, nx), Axis::span(0, 1, ny)}, {0.0, 0.5});
}

double F(double x, double y, double t) { return std::exp(0.3 * x - 0.2 * y) * std::sin(0.7 * y + 0.4 + t) + 0.1 * x * y * y; }

}  // namespace

TEST_CASE("elliptic coefficients validation") {
  const auto I = EllipticCoefficients::identity(3);
  CHECK(I.theta() == doctest::Approx(1.0));
  CHECK(I.lambda() == 1.0);
  CHECK_THROWS_AS(EllipticCoefficients(2, {1, 0.5, 0.4, 1}), InvalidArgument);
  CHECK_THROWS_AS(EllipticCoefficients(2, {1, 2, 2, 1}), InvalidArgument);
  CHECK_THROWS_AS(EllipticCoefficients(2, {1, 0, 0}), DimensionMismatch);
}

TEST_CASE("identity reflection negates x_n") {
  const auto I = EllipticCoefficients::identity(3);
  const std::vector<double> x{0.3, -0.2, 0.7};
  const auto y = reflection_map(I, x);
  CHECK(y[0] == 0.3);
  CHECK(y[1] == -0.2);
  CHECK(y[2] == -0.7);
}

TEST_CASE("reflection is an involution fixing the boundary plane") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_spd(rng, 3);
    std::vector<double> x{u(rng), u(rng), u(rng)};
    const auto back = reflection_map(a, reflection_map(a, x));
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(back[k] - x[k]) <= 1e-12 * (1 + std::abs(x[k])));
    x[2] = 0.0;
    CHECK(reflection_map(a, x) == x);
  }
}

TEST_CASE("coefficient invariance J a J^T = a") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 3;
    const auto a = random_spd(rng, n);
    const auto b = reflected_coefficients(a);
    double err = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) err = std::max(err, std::abs(b[k] - a.matrix()[k]));
    CHECK(err < 1e-12 * std::max(1.0, a.lambda()));
  }
}

TEST_CASE("constant extends to a constant") {
  const auto g = half_grid(0.1);
  const auto u = GridFunction::sample(g, [](auto, double) { return 1.0; });
  std::mt19937_64 rng(9);
  const auto ext = reflect_extend(u, random_spd(rng, 2));
  CHECK(ext.function.grid().axis(1).count == 2 * g.axis(1).count - 1);
  for (double v : ext.function.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-11));
  for (double j : ext.report.jumps) CHECK(j < 1e-10);
}

TEST_CASE("even extension of cos(x_n) g") {
  for (double h : {0.05, 0.025}) {
    const auto g = half_grid(h);
    const auto u = GridFunction::sample(g, [](auto x, double t) { return std::cos(x[1]) * std::sin(x[0] + t); });
    const auto ext = reflect_extend(u, EllipticCoefficients::identity(2));
    for (double j : ext.report.jumps) CHECK(j < 10 * h * h);
    // exact even reflection
    const auto& eg = ext.function.grid();
    double err = 0.0;
    for (std::size_t k = 0; k < eg.time_size(); ++k)
      for (std::size_t s = 0; s < eg.spatial_size(); ++s) {
        const auto x = eg.point(s);
        err = std::max(err, std::abs(ext.function(s, k) - std::cos(x[1]) * std::sin(x[0] + eg.time(k))));
      }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("manufactured solution for random coefficients") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = random_spd(rng, 2);
    auto exact = [&](std::span<const double> x, double t) {
      const auto y = reflection_map(a, x);
      return F(x[0], x[1], t) + F(y[0], y[1], t);
    };
    for (double h : {0.05, 0.025}) {
      const auto u = GridFunction::sample(half_grid(h), exact);
      const auto ext = reflect_extend(u, a);
      for (double j : ext.report.jumps) CHECK(j < 10 * h * h);
      const auto& eg = ext.function.grid();
      double err = 0.0;
      for (std::size_t s = 0; s < eg.spatial_size(); ++s) {
        const auto x = eg.point(s);
        if (std::abs(reflection_map(a, x)[0]) > 1.0) continue;  // tangential extrapolation
        err = std::max(err, std::abs(ext.function(s, 1) - exact(x, eg.time(1))));
      }
      CHECK(err < 1e-6);
    }
  }
}

TEST_CASE("extension refuses data violating the boundary conditions") {
  const auto g = half_grid(0.05);
  const auto u = GridFunction::sample(g, [](auto x, double) { return x[1]; });
  CHECK_THROWS_AS(reflect_extend(u, EllipticCoefficients::identity(2)), BoundaryConditionError);
  SpaceTimeGrid shifted({Axis::span(-1, 1, 11), Axis::span(0.1, 1, 10)}, {0.0});
  CHECK_THROWS_AS(reflect_extend(GridFunction(shifted), EllipticCoefficients::identity(2)), InvalidArgument);
}

TEST_CASE("difference quotients") {
  SpaceTimeGrid g({Axis::span(0, 1, 11), Axis::span(0, 1, 11)}, {0.0});
  const auto lin = GridFunction::sample(g, [](auto x, double) { return 3 * x[0] - 2 * x[1] + 1; });
  const std::size_t d0[] = {0}, d1[] = {1}, d00[] = {0, 0}, d01[] = {0, 1};
  const auto q0 = difference_quotient(lin, d0, 0.2);
  const auto q1 = difference_quotient(lin, d1, 0.1);
  for (double v : q0.values()) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
  for (double v : q1.values()) CHECK(v == doctest::Approx(-2.0).epsilon(1e-12));
  const auto sq = GridFunction::sample(g, [](auto x, double) { return x[0] * x[0]; });
  const auto q = difference_quotient(sq, d00, 0.1);
  CHECK(q.grid().axis(0).count == 9);
  for (double v : q.values()) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  const auto c = GridFunction::sample(g, [](auto, double) { return 5.0; });
  const auto qc = difference_quotient(c, d01, 0.1);
  for (double v : qc.values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(difference_quotient(lin, d0, 0.15), InvalidArgument);
  CHECK_THROWS_AS(difference_quotient(lin, d0, -0.1), InvalidArgument);
}

TEST_CASE("difference quotients match their integral representations") {
  SpaceTimeGrid g({Axis::span(0, 1, 21), Axis::span(0, 1, 21)}, {0.0});
  auto f = [](double x, double y) { return std::sin(2 * x + y) + x * x * y; };
  auto fx = [](double x, double y) { return 2 * std::cos(2 * x + y) + 2 * x * y; };
  auto fxy = [](double x, double y) { return -2 * std::sin(2 * x + y) + 2 * x; };
  const auto u = GridFunction::sample(g, [&](auto x, double) { return f(x[0], x[1]); });
  const double eps = 0.1;
  const std::size_t d0[] = {0}, d01[] = {0, 1};
  const auto q1 = difference_quotient(u, d0, eps);
  const auto q2 = difference_quotient(u, d01, eps);
  const int m = 400;
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t s = 0; s < q1.grid().spatial_size(); ++s) {
    const auto x = q1.grid().point(s);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += fx(x[0] + (i + 0.5) / m * eps, x[1]) / m;
    e1 = std::max(e1, std::abs(acc - q1(s, 0)));
  }
  for (std::size_t s = 0; s < q2.grid().spatial_size(); ++s) {
    const auto x = q2.grid().point(s);
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) acc += fxy(x[0] + (i + 0.5) / m * eps, x[1] + (j + 0.5) / m * eps) / (m * m);
    e2 = std::max(e2, std::abs(acc - q2(s, 0)));
  }
  CHECK(e1 < 1e-6);
  CHECK(e2 < 1e-6);
}
