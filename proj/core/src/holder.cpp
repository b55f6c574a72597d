#include "schauder/holder.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "schauder/error.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

namespace {

void check_region(const GridFunction& u, const Region& region) {
  if (region.spatial_mask.size() != u.grid().spatial_size() || region.time_end > u.grid().time_size())
    throw DimensionMismatch("region does not match grid");
}

void check_exponent(double e) {
  if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("Hoelder exponent must lie in (0,1)");
}

std::vector<std::size_t> active_points(const Region& region) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < region.spatial_mask.size(); ++s)
    if (region.spatial_mask[s]) out.push_back(s);
  return out;
}

// 1 / |x - y|^alpha indexed by the lattice offset between two grid points.
struct OffsetTable {
  std::vector<double> inv;
  std::vector<long> base;  // per spatial point
  long center = 0;
};

OffsetTable offset_table(const SpaceTimeGrid& grid, double alpha) {
  const std::size_t dim = grid.dimension();
  std::vector<long> tstride(dim);
  long size = 1;
  for (std::size_t a = dim; a-- > 0;) {
    tstride[a] = size;
    size *= static_cast<long>(2 * grid.axis(a).count - 1);
  }
  OffsetTable tab;
  tab.inv.assign(static_cast<std::size_t>(size), 0.0);
  for (long idx = 0; idx < size; ++idx) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const long n = static_cast<long>(grid.axis(a).count);
      const long off = (idx / tstride[a]) % (2 * n - 1) - (n - 1);
      const double d = static_cast<double>(off) * grid.axis(a).spacing;
      r2 += d * d;
    }
    if (r2 > 0.0) tab.inv[static_cast<std::size_t>(idx)] = std::pow(std::sqrt(r2), -alpha);
  }
  tab.base.resize(grid.spatial_size());
  for (std::size_t s = 0; s < grid.spatial_size(); ++s) {
    long b = 0;
    for (std::size_t a = 0; a < dim; ++a) b += static_cast<long>(grid.axis_index(s, a)) * tstride[a];
    tab.base[s] = b;
  }
  for (std::size_t a = 0; a < dim; ++a)
    tab.center += static_cast<long>(grid.axis(a).count - 1) * tstride[a];
  return tab;
}

}  // namespace

double parabolic_distance(const SpaceTimePoint& p, const SpaceTimePoint& q) {
  if (p.x.size() != q.x.size()) throw DimensionMismatch("points have different spatial dimension");
  double r2 = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) r2 += (p.x[i] - q.x[i]) * (p.x[i] - q.x[i]);
  return std::max(std::sqrt(r2), std::pow(std::abs(p.t - q.t), 0.25));
}

SeminormWitness spatial_seminorm_witness(const GridFunction& u, double alpha, const Region& region,
                                         const SeminormOptions& opts) {
  check_exponent(alpha);
  check_region(u, region);
  const auto& grid = u.grid();
  const auto pts = active_points(region);
  SeminormWitness best;
  if (pts.size() < 2 || region.time_end <= region.time_begin) return best;
  const auto tab = offset_table(grid, alpha);
  const std::size_t ns = grid.spatial_size();
  const auto vals = u.values();
  const std::size_t np = pts.size();
  const std::size_t nslices = region.time_end - region.time_begin;
  const std::size_t total = nslices * np * (np - 1) / 2;

  auto visit = [&](std::size_t k, std::size_t i, std::size_t j) {
    const std::size_t si = pts[i];
    const std::size_t sj = pts[j];
    const double diff = std::abs(vals[k * ns + si] - vals[k * ns + sj]);
    const double q = diff * tab.inv[static_cast<std::size_t>(tab.base[sj] - tab.base[si] + tab.center)];
    if (q > best.value) best = {q, k * ns + si, k * ns + sj};
  };

  if (opts.max_pairs && total > *opts.max_pairs) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick_k(region.time_begin, region.time_end - 1);
    std::uniform_int_distribution<std::size_t> pick_p(0, np - 1);
    for (std::size_t n = 0; n < *opts.max_pairs; ++n) {
      std::size_t i = pick_p(rng);
      std::size_t j = pick_p(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      visit(pick_k(rng), i, j);
    }
    return best;
  }
  for (std::size_t k = region.time_begin; k < region.time_end; ++k)
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = i + 1; j < np; ++j) visit(k, i, j);
  return best;
}

SeminormWitness temporal_seminorm_witness(const GridFunction& u, double beta, const Region& region,
                                          const SeminormOptions& opts) {
  check_exponent(beta);
  check_region(u, region);
  const auto& grid = u.grid();
  SeminormWitness best;
  const std::size_t k0 = region.time_begin;
  const std::size_t k1 = region.time_end;
  if (k1 < k0 + 2) return best;
  const std::size_t nk = k1 - k0;
  std::vector<double> inv(nk * nk, 0.0);
  for (std::size_t a = 0; a < nk; ++a)
    for (std::size_t b = a + 1; b < nk; ++b)
      inv[a * nk + b] = std::pow(grid.time(k0 + b) - grid.time(k0 + a), -beta);
  const auto pts = active_points(region);
  const std::size_t ns = grid.spatial_size();
  const auto vals = u.values();

  auto visit = [&](std::size_t s, std::size_t a, std::size_t b) {
    const double diff = std::abs(vals[(k0 + a) * ns + s] - vals[(k0 + b) * ns + s]);
    const double q = diff * inv[a * nk + b];
    if (q > best.value) best = {q, (k0 + a) * ns + s, (k0 + b) * ns + s};
  };

  const std::size_t total = pts.size() * nk * (nk - 1) / 2;
  if (opts.max_pairs && total > *opts.max_pairs) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick_s(0, pts.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_k(0, nk - 1);
    for (std::size_t n = 0; n < *opts.max_pairs; ++n) {
      std::size_t a = pick_k(rng);
      std::size_t b = pick_k(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      visit(pts[pick_s(rng)], a, b);
    }
    return best;
  }
  std::vector<double> column(nk);
  for (std::size_t s : pts) {
    for (std::size_t a = 0; a < nk; ++a) column[a] = vals[(k0 + a) * ns + s];
    for (std::size_t a = 0; a < nk; ++a) {
      const double va = column[a];
      const double* row = &inv[a * nk];
      for (std::size_t b = a + 1; b < nk; ++b) {
        const double q = std::abs(va - column[b]) * row[b];
        if (q > best.value) best = {q, (k0 + a) * ns + s, (k0 + b) * ns + s};
      }
    }
  }
  return best;
}

double spatial_seminorm(const GridFunction& u, double alpha) {
  return spatial_seminorm_witness(u, alpha, Region::whole(u.grid())).value;
}

double spatial_seminorm(const GridFunction& u, double alpha, const Region& region,
                        const SeminormOptions& opts) {
  return spatial_seminorm_witness(u, alpha, region, opts).value;
}

double temporal_seminorm(const GridFunction& u, double beta) {
  return temporal_seminorm_witness(u, beta, Region::whole(u.grid())).value;
}

double temporal_seminorm(const GridFunction& u, double beta, const Region& region,
                         const SeminormOptions& opts) {
  return temporal_seminorm_witness(u, beta, region, opts).value;
}

std::vector<SeminormTerm> parabolic_seminorm_terms(const HolderExponents& exps) {
  check_exponent(exps.gamma);
  if (exps.m < 0 || exps.m > 4) throw InvalidArgument("parabolic order must lie in 0..4");
  std::vector<SeminormTerm> terms;
  for (int j = 0; 4 * j <= exps.m; ++j) {
    for (int k = 0; 4 * j + k <= exps.m; ++k) {
      if (4 * j + k == exps.m) terms.push_back({j, k, false, exps.gamma});
      const double beta = (exps.m + exps.gamma - k) / 4.0 - j;
      if (beta > 0.0 && beta < 1.0) terms.push_back({j, k, true, beta});
    }
  }
  return terms;
}

const std::vector<GridFunction>& DerivativeCache::derivatives(int time_order, int space_order) {
  for (const auto& [key, fns] : cache_)
    if (key.first == time_order && key.second == space_order) return fns;
  std::vector<GridFunction> fns;
  for (const auto& alpha : multi_indices(u_->grid().dimension(), space_order))
    fns.push_back(fd_derivative(*u_, alpha, time_order));
  cache_.push_back({{time_order, space_order}, std::move(fns)});
  return cache_.back().second;
}

double parabolic_seminorm(const GridFunction& u, const HolderExponents& exps) {
  return parabolic_seminorm(u, exps, Region::whole(u.grid()));
}

double parabolic_seminorm(const GridFunction& u, const HolderExponents& exps, const Region& region) {
  DerivativeCache cache(u);
  double total = 0.0;
  for (const auto& term : parabolic_seminorm_terms(exps)) {
    for (const auto& d : cache.derivatives(term.time_order, term.space_order)) {
      total += term.temporal ? temporal_seminorm(d, term.exponent, region)
                             : spatial_seminorm(d, term.exponent, region);
    }
  }
  return total;
}

namespace {

double order_zero(const GridFunction& f, double gamma, const Region& region) {
  return spatial_seminorm(f, gamma, region) + temporal_seminorm(f, gamma / 4.0, region);
}

}  // namespace

double d41_seminorm(const GridFunction& u, double gamma) {
  return d41_seminorm(u, gamma, Region::whole(u.grid()));
}

double d41_seminorm(const GridFunction& u, double gamma, const Region& region) {
  return d41_seminorm(u, fd_derivative(u, MultiIndex(u.grid().dimension(), 0), 1), gamma, region);
}

double d41_seminorm(const GridFunction& u, const GridFunction& time_derivative, double gamma,
                    const Region& region) {
  check_exponent(gamma);
  double total = order_zero(time_derivative, gamma, region);
  for (const auto& alpha : multi_indices(u.grid().dimension(), 4))
    total += order_zero(fd_derivative(u, alpha, 0), gamma, region);
  return total;
}

D41Evaluator::D41Evaluator(const GridFunction& u, double gamma)
    : D41Evaluator(u, fd_derivative(u, MultiIndex(u.grid().dimension(), 0), 1), gamma) {}

D41Evaluator::D41Evaluator(const GridFunction& u, const GridFunction& time_derivative, double gamma)
    : gamma_(gamma) {
  check_exponent(gamma);
  if (!(time_derivative.grid() == u.grid())) throw DimensionMismatch("time derivative grid differs");
  for (const auto& alpha : multi_indices(u.grid().dimension(), 4)) fourth_.push_back(fd_derivative(u, alpha, 0));
  ut_.push_back(time_derivative);
}

double D41Evaluator::operator()(const Region& region) const {
  double total = order_zero(ut_.front(), gamma_, region);
  for (const auto& d : fourth_) total += order_zero(d, gamma_, region);
  return total;
}

namespace {

double c41_sup_part(const GridFunction& u, const GridFunction& ut) {
  double total = ut.sup_norm();
  for (int k = 0; k <= 4; ++k)
    for (const auto& alpha : multi_indices(u.grid().dimension(), k))
      total += fd_derivative(u, alpha, 0).sup_norm();
  return total;
}

}  // namespace

double c41gamma_norm(const GridFunction& u, double gamma) {
  const auto ut = fd_derivative(u, MultiIndex(u.grid().dimension(), 0), 1);
  return c41gamma_norm(u, ut, gamma);
}

double c41gamma_norm(const GridFunction& u, const GridFunction& time_derivative, double gamma) {
  if (!(time_derivative.grid() == u.grid())) throw DimensionMismatch("time derivative grid differs");
  return c41_sup_part(u, time_derivative) +
         d41_seminorm(u, time_derivative, gamma, Region::whole(u.grid()));
}

double c00gamma_norm(const GridFunction& u, double gamma) {
  return u.sup_norm() + order_zero(u, gamma, Region::whole(u.grid()));
}

double c4gamma_norm(const GridFunction& u, double gamma) {
  check_exponent(gamma);
  const auto& grid = u.grid();
  std::vector<std::pair<int, GridFunction>> derivs;
  for (int k = 0; k <= 4; ++k)
    for (const auto& alpha : multi_indices(grid.dimension(), k))
      derivs.emplace_back(k, fd_derivative(u, alpha, 0));
  const std::size_t ns = grid.spatial_size();
  double best = 0.0;
  for (std::size_t t = 0; t < grid.time_size(); ++t) {
    Region slice{std::vector<char>(ns, 1), t, t + 1};
    double total = 0.0;
    for (const auto& [k, d] : derivs) {
      double sup = 0.0;
      for (std::size_t s = 0; s < ns; ++s) sup = std::max(sup, std::abs(d(s, t)));
      total += sup;
      if (k == 4) total += spatial_seminorm(d, gamma, slice);
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace schauder
