#include <doctest.h>

#include <cmath>
#include <random>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/holder.hpp"

using namespace schauder;

namespace {

// Independent oracle: nested loops over every pair of samples, no tables.
double brute_spatial(const GridFunction& u, double alpha) {
  const auto& g = u.grid();
  double best = 0.0;
  for (std::size_t k = 0; k < g.time_size(); ++k)
    for (std::size_t i = 0; i < g.spatial_size(); ++i)
      for (std::size_t j = 0; j < g.spatial_size(); ++j) {
        if (i == j) continue;
        const auto p = g.point(i);
        const auto q = g.point(j);
        double r2 = 0;
        for (std::size_t a = 0; a < p.size(); ++a) r2 += (p[a] - q[a]) * (p[a] - q[a]);
        best = std::max(best, std::abs(u(i, k) - u(j, k)) / std::pow(std::sqrt(r2), alpha));
      }
  return best;
}

double brute_temporal(const GridFunction& u, double beta) {
  const auto& g = u.grid();
  double best = 0.0;
  for (std::size_t s = 0; s < g.spatial_size(); ++s)
    for (std::size_t a = 0; a < g.time_size(); ++a)
      for (std::size_t b = 0; b < g.time_size(); ++b)
        if (a != b) best = std::max(best, std::abs(u(s, a) - u(s, b)) / std::pow(std::abs(g.time(a) - g.time(b)), beta));
  return best;
}

SpaceTimeGrid unit_grid(std::size_t dim, std::size_t nx, std::size_t nt) {
  std::vector<double> times(nt);
  for (std::size_t k = 0; k < nt; ++k) times[k] = nt == 1 ? 0.0 : double(k) / double(nt - 1);
  return SpaceTimeGrid(std::vector<Axis>(dim, Axis::span(0, 1, nx)), times);
}

}  // namespace

TEST_CASE("parabolic distance") {
  CHECK(parabolic_distance({{0, 0}, 0}, {{1, 0}, 0}) == doctest::Approx(1.0));
  CHECK(parabolic_distance({{0}, 0}, {{0}, 16}) == doctest::Approx(2.0));
  CHECK(parabolic_distance({{1, 0}, 0}, {{0, 0}, 81}) == doctest::Approx(3.0));
  CHECK(parabolic_distance({{0.3}, 2}, {{0.1}, 1}) == parabolic_distance({{0.1}, 1}, {{0.3}, 2}));
  CHECK(parabolic_distance({{0.3}, 2}, {{0.3}, 2}) == 0.0);
  CHECK_THROWS_AS(parabolic_distance({{0}, 0}, {{0, 0}, 0}), DimensionMismatch);
}

TEST_CASE("seminorms of constants vanish") {
  const auto g = unit_grid(2, 6, 4);
  const auto u = GridFunction::sample(g, [](auto, double) { return 3.0; });
  CHECK(spatial_seminorm(u, 0.5) == 0.0);
  CHECK(temporal_seminorm(u, 0.25) == 0.0);
}

TEST_CASE("spatial seminorm examples") {
  const auto g1 = unit_grid(1, 33, 1);
  const auto a = GridFunction::sample(g1, [](auto x, double) { return std::abs(x[0]); });
  const auto w = spatial_seminorm_witness(a, 0.5, whole(g1));
  CHECK(w.value == doctest::Approx(1.0));
  CHECK(w.first == 0);
  CHECK(w.second == 32);
  CHECK(w.value == doctest::Approx(brute_spatial(a, 0.5)));

  for (std::size_t dim : {1u, 2u, 3u}) {
    const auto g = unit_grid(dim, 5, 2);
    const auto u = GridFunction::sample(g, [](auto x, double) { return x[0]; });
    CHECK(spatial_seminorm(u, 0.5) == doctest::Approx(1.0));
    CHECK(spatial_seminorm(u, 0.5) == doctest::Approx(brute_spatial(u, 0.5)));
  }
}

TEST_CASE("temporal seminorm examples") {
  const auto g = unit_grid(1, 3, 41);
  const auto lin = GridFunction::sample(g, [](auto, double t) { return t; });
  CHECK(temporal_seminorm(lin, 0.25) == doctest::Approx(1.0));
  const auto root = GridFunction::sample(g, [](auto, double t) { return std::pow(t, 0.25); });
  const auto w = temporal_seminorm_witness(root, 0.25, whole(g));
  CHECK(w.value == doctest::Approx(1.0));
  CHECK(w.first % g.spatial_size() == w.second % g.spatial_size());
  CHECK(w.first / g.spatial_size() == 0);
  CHECK(w.value == doctest::Approx(brute_temporal(root, 0.25)));
}

TEST_CASE("seminorms agree with brute force on random data") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  SpaceTimeGrid g({Axis::span(0, 1, 5), Axis::span(-1, 0.5, 4)}, {0.0, 0.2, 0.25, 0.9});
  GridFunction u(g);
  for (auto& v : u.values()) v = n01(rng);
  CHECK(spatial_seminorm(u, 0.3) == doctest::Approx(brute_spatial(u, 0.3)).epsilon(1e-13));
  CHECK(temporal_seminorm(u, 0.7) == doctest::Approx(brute_temporal(u, 0.7)).epsilon(1e-13));
}

TEST_CASE("sub-grid monotonicity and subsampling") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  const auto g = unit_grid(2, 7, 5);
  GridFunction u(g);
  for (auto& v : u.values()) v = n01(rng);
  auto r = whole(g);
  for (std::size_t s = 0; s < g.spatial_size(); s += 2) r.spatial_mask[s] = 0;
  r.time_begin = 1;
  CHECK(spatial_seminorm(u, 0.5, r) <= spatial_seminorm(u, 0.5));
  CHECK(temporal_seminorm(u, 0.5, r) <= temporal_seminorm(u, 0.5));
  SeminormOptions opts;
  opts.max_pairs = 200;
  CHECK(spatial_seminorm(u, 0.5, whole(g), opts) <= spatial_seminorm(u, 0.5));
  CHECK(spatial_seminorm(u, 0.5, whole(g), opts) == spatial_seminorm(u, 0.5, whole(g), opts));
}

TEST_CASE("parabolic seminorm terms") {
  const auto t0 = parabolic_seminorm_terms({0.5, 0});
  REQUIRE(t0.size() == 2);
  CHECK(t0[1].temporal);
  CHECK(t0[1].exponent == doctest::Approx(0.125));
  // m = 4: spatial gamma of grad^4 and u_t, temporal for k = 1..4 and j = 1.
  const auto t4 = parabolic_seminorm_terms({0.5, 4});
  int spatial = 0, temporal = 0;
  for (const auto& t : t4) (t.temporal ? temporal : spatial)++;
  CHECK(spatial == 2);
  CHECK(temporal == 5);
  CHECK_THROWS_AS(parabolic_seminorm_terms({1.5, 0}), InvalidArgument);
}

TEST_CASE("parabolic seminorm examples") {
  const auto g = unit_grid(2, 6, 6);
  const auto x1 = GridFunction::sample(g, [](auto x, double) { return x[0]; });
  CHECK(parabolic_seminorm(x1, {0.5, 0}) == doctest::Approx(1.0));
  const auto t = GridFunction::sample(g, [](auto, double t) { return t; });
  CHECK(parabolic_seminorm(t, {0.5, 0}) == doctest::Approx(1.0));
  CHECK(parabolic_seminorm(t, {0.5, 0}) == doctest::Approx(spatial_seminorm(t, 0.5) + temporal_seminorm(t, 0.125)));

  const auto poly = GridFunction::sample(g, [](auto x, double t) {
    return 2 * t + x[0] * x[0] * x[0] * x[1] - 0.5 * std::pow(x[1], 4) + x[0] * x[1] + 1;
  });
  CHECK(parabolic_seminorm(poly, {0.5, 4}) < 1e-7);
  CHECK(d41_seminorm(poly, 0.5) < 1e-7);
}

TEST_CASE("d41 against brute force") {
  SpaceTimeGrid g({Axis::span(0, 2, 9)}, {0.0, 0.1, 0.2, 0.3, 0.5, 0.8});
  const auto u = GridFunction::sample(g, [](auto x, double t) { return std::exp(-t) * std::sin(x[0]); });
  const auto d4 = fd_derivative(u, {4}, 0);
  const auto ut = fd_derivative(u, {0}, 1);
  const double oracle = brute_spatial(d4, 0.5) + brute_temporal(d4, 0.125) + brute_spatial(ut, 0.5) +
                        brute_temporal(ut, 0.125);
  CHECK(d41_seminorm(u, 0.5) > 0.0);
  CHECK(d41_seminorm(u, 0.5) == doctest::Approx(oracle).epsilon(1e-13));
  double sup = ut.sup_norm();
  for (int k = 0; k <= 4; ++k) sup += fd_derivative(u, {k}, 0).sup_norm();
  CHECK(c41gamma_norm(u, 0.5) == doctest::Approx(sup + oracle).epsilon(1e-13));
}

TEST_CASE("scaling law is exact for pairwise seminorms") {
  const double lambda = 1.7;
  const double gamma = 0.5;
  SpaceTimeGrid g({Axis::span(0, 1, 9), Axis::span(0, 1, 7)}, {0.0, 0.1, 0.3, 0.6, 1.0});
  auto f = [](std::span<const double> x, double t) { return std::sin(2 * x[0] + x[1]) * std::exp(-t) + x[0] * t; };
  const auto u = GridFunction::sample(g, f);
  const auto gl = g.rescaled(1.0 / lambda);
  // u_lambda(x, t) = u(lambda x, lambda^4 t) sampled on the shrunk grid is the same value array.
  const auto ul = u.on_grid(gl);
  CHECK(spatial_seminorm(ul, gamma) == doctest::Approx(std::pow(lambda, gamma) * spatial_seminorm(u, gamma)).epsilon(1e-12));
  CHECK(temporal_seminorm(ul, 0.3) == doctest::Approx(std::pow(lambda, 1.2) * temporal_seminorm(u, 0.3)).epsilon(1e-12));
  for (const auto& term : parabolic_seminorm_terms({gamma, 4})) {
    for (const auto& alpha : multi_indices(2, term.space_order)) {
      const auto d = fd_derivative(u, alpha, term.time_order);
      const auto dl = fd_derivative(ul, alpha, term.time_order);
      const double factor = std::pow(lambda, 4 * term.time_order + term.space_order);
      const double base = term.temporal ? temporal_seminorm(d, term.exponent) : spatial_seminorm(d, term.exponent);
      const double scaled = term.temporal ? temporal_seminorm(dl, term.exponent) : spatial_seminorm(dl, term.exponent);
      const double expo = term.temporal ? 4 * term.exponent : term.exponent;
      INFO(term.time_order, " ", term.space_order, " ", term.temporal, " rel ", scaled / (factor * std::pow(lambda, expo) * base) - 1);
      CHECK(scaled == doctest::Approx(factor * std::pow(lambda, expo) * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("norm helpers") {
  SpaceTimeGrid g({Axis::span(0, 1, 9)}, {0.0, 0.5, 1.0});
  const auto u = GridFunction::sample(g, [](auto x, double t) { return x[0] * x[0] + t; });
  CHECK(c00gamma_norm(u, 0.5) == doctest::Approx(u.sup_norm() + spatial_seminorm(u, 0.5) + temporal_seminorm(u, 0.125)));
  // x^2 + t: slices sum |u| + |u'| + |u''| maximised at t = 1, x = 1: 2 + 2 + 2.
  CHECK(c4gamma_norm(u, 0.5) == doctest::Approx(6.0).epsilon(1e-10));
}
