#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schauder/grid.hpp"

namespace schauder {

/// A point (x, t) of space-time.
struct SpaceTimePoint {
  std::vector<double> x;
  double t = 0.0;
};

/// max(|x - y|, |t - s|^(1/4)).
double parabolic_distance(const SpaceTimePoint& p, const SpaceTimePoint& q);

struct HolderExponents {
  double gamma = 0.5;
  int m = 0;
};

/// Controls the pairwise maximum. With `max_pairs` set, grids having more
/// candidate pairs than that are searched on a uniform random subsample.
struct SeminormOptions {
  std::optional<std::size_t> max_pairs;
  std::uint64_t seed = 0;
};

/// Pairwise maximum together with the pair that attains it. Flat sample
/// indices are k * spatial_size + s. Ties resolve to the first pair in
/// lexicographic (time, first, second) order.
struct SeminormWitness {
  double value = 0.0;
  std::size_t first = 0;
  std::size_t second = 0;
};

SeminormWitness spatial_seminorm_witness(const GridFunction& u, double alpha, const Region& region,
                                         const SeminormOptions& opts = {});
SeminormWitness temporal_seminorm_witness(const GridFunction& u, double beta, const Region& region,
                                          const SeminormOptions& opts = {});

/// max over sample pairs (x,t),(y,t), x != y of |u(x,t)-u(y,t)| / |x-y|^alpha.
double spatial_seminorm(const GridFunction& u, double alpha);
double spatial_seminorm(const GridFunction& u, double alpha, const Region& region,
                        const SeminormOptions& opts = {});
/// max over sample pairs (x,t),(x,s), t != s of |u(x,t)-u(x,s)| / |t-s|^beta.
double temporal_seminorm(const GridFunction& u, double beta);
double temporal_seminorm(const GridFunction& u, double beta, const Region& region,
                         const SeminormOptions& opts = {});

/// One term of the parabolic seminorm: which derivative, which kind of
/// seminorm, and with which exponent.
struct SeminormTerm {
  int time_order = 0;
  int space_order = 0;
  bool temporal = false;
  double exponent = 0.0;
};

/// Terms of [u]^(m)_gamma: spatial gamma-seminorms of d_t^j grad^k u with
/// 4j + k = m, and temporal ((m + gamma - k)/4 - j)-seminorms wherever that
/// exponent lies in (0, 1).
std::vector<SeminormTerm> parabolic_seminorm_terms(const HolderExponents& exps);

/// Derivative grids for repeated seminorm evaluation on sub-regions.
class DerivativeCache {
 public:
  explicit DerivativeCache(const GridFunction& u) : u_(&u) {}
  /// Sum over multi-indices is done by the caller; this returns every
  /// d_t^j grad_alpha u with |alpha| = k.
  const std::vector<GridFunction>& derivatives(int time_order, int space_order);

 private:
  const GridFunction* u_;
  std::vector<std::pair<std::pair<int, int>, std::vector<GridFunction>>> cache_;
};

double parabolic_seminorm(const GridFunction& u, const HolderExponents& exps);
double parabolic_seminorm(const GridFunction& u, const HolderExponents& exps, const Region& region);

/// [grad^4 u]^(0)_gamma + [d_t u]^(0)_gamma.
double d41_seminorm(const GridFunction& u, double gamma);
double d41_seminorm(const GridFunction& u, double gamma, const Region& region);

/// d41 seminorm with a supplied time derivative (e.g. known exactly).
double d41_seminorm(const GridFunction& u, const GridFunction& time_derivative, double gamma,
                    const Region& region);

/// d41 seminorm on many sub-regions of one grid function; derivatives are
/// computed once.
class D41Evaluator {
 public:
  D41Evaluator(const GridFunction& u, double gamma);
  D41Evaluator(const GridFunction& u, const GridFunction& time_derivative, double gamma);

  double operator()(const Region& region) const;
  const SpaceTimeGrid& grid() const { return fourth_.front().grid(); }

 private:
  double gamma_;
  std::vector<GridFunction> fourth_;
  std::vector<GridFunction> ut_;
};

/// sum over 4j + |alpha| <= 4 of sup |d_t^j grad_alpha u|, plus d41.
double c41gamma_norm(const GridFunction& u, double gamma);
double c41gamma_norm(const GridFunction& u, const GridFunction& time_derivative, double gamma);

/// sup-norm of u plus [u]^(0)_gamma.
double c00gamma_norm(const GridFunction& u, double gamma);

/// Elliptic C^{4,gamma} norm of each time slice, maximised over slices:
/// sum over |alpha| <= 4 of sup |grad_alpha u| plus [grad^4 u]_gamma.
double c4gamma_norm(const GridFunction& u, double gamma);

/// Region of all samples of `grid`; shorthand for Region::whole.
inline Region whole(const SpaceTimeGrid& grid) { return Region::whole(grid); }

}  // namespace schauder
