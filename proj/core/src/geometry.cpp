#include "schauder/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "schauder/error.hpp"

namespace schauder {

namespace {

double pow4(double r) { return r * r * r * r; }

bool time_admissible(const ParabolicBall& b, double t) {
  if (!(t > b.center.t - pow4(b.radius) && t < b.center.t + pow4(b.radius))) return false;
  if (b.time_above && t < b.time_floor) return false;
  if (b.time_below && t > b.time_ceiling) return false;
  return true;
}

bool space_admissible(const ParabolicBall& b, std::span<const double> x) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - b.center.x[i]) * (x[i] - b.center.x[i]);
  if (!(std::sqrt(r2) < b.radius)) return false;
  if (b.space_half && x.back() < 0.0) return false;
  return true;
}

}  // namespace

std::string ParabolicBall::form() const {
  std::string f = "U";
  if (time_above) f += "+";
  if (time_below) f += "-";
  if (space_half) f += "_+";
  return f;
}

ParabolicBall ParabolicBall::with(SpaceTimePoint c, double r) const {
  ParabolicBall b = *this;
  b.center = std::move(c);
  b.radius = r;
  return b;
}

bool ball_contains(const ParabolicBall& ball, const SpaceTimePoint& p) {
  if (p.x.size() != ball.center.x.size()) throw DimensionMismatch("point and ball differ in dimension");
  return space_admissible(ball, p.x) && time_admissible(ball, p.t);
}

Region ball_region(const SpaceTimeGrid& grid, const ParabolicBall& ball) {
  if (grid.dimension() != ball.center.x.size()) throw DimensionMismatch("grid and ball differ in dimension");
  Region r;
  r.spatial_mask.assign(grid.spatial_size(), 0);
  std::vector<double> x(grid.dimension());
  for (std::size_t s = 0; s < grid.spatial_size(); ++s) {
    grid.point(s, x);
    r.spatial_mask[s] = space_admissible(ball, x) ? 1 : 0;
  }
  const auto& ts = grid.times();
  std::size_t k = 0;
  while (k < ts.size() && !time_admissible(ball, ts[k])) ++k;
  r.time_begin = k;
  while (k < ts.size() && time_admissible(ball, ts[k])) ++k;
  r.time_end = k;
  return r;
}

bool Box::contains(const std::vector<double>& x) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

double Covering::time_knot(std::size_t k) const {
  return k >= k0 ? T : static_cast<double>(k) * pow4(rho);
}

ParabolicBall Covering::piece(std::size_t j, std::size_t k, double r) const {
  ParabolicBall b;
  b.center = {centers.at(j), time_knot(k)};
  b.radius = r;
  b.time_above = b.center.t - pow4(r) < 0.0;
  b.time_floor = 0.0;
  b.time_below = b.center.t + pow4(r) > T;
  b.time_ceiling = T;
  b.space_half = mode == BoundaryMode::HalfSpace && b.center.x.back() - r < 0.0;
  return b;
}

namespace {

// Knots whose enlarged pieces can be truncated in time: the first and last
// few. Every other knot gives a full ball.
std::vector<std::size_t> end_knots(std::size_t k0) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= k0; ++k) {
    out.push_back(k);
    if (k == 40 && k0 > 81) k = k0 - 41;
  }
  return out;
}

}  // namespace

std::map<std::string, std::size_t> Covering::form_counts() const {
  std::size_t half = 0;
  for (std::size_t j = 0; j < N(); ++j)
    if (piece(j, 0, 2 * rho).space_half) ++half;
  const std::size_t full = N() - half;
  std::map<std::string, std::size_t> out;
  std::size_t listed = 0;
  for (std::size_t k : end_knots(k0)) {
    ++listed;
    auto b = piece(0, k, 2 * rho);
    b.space_half = false;
    if (full) out[b.form()] += full;
    if (half) out[b.form() + "_+"] += half;
  }
  const std::size_t rest = (k0 + 1) - listed;
  if (rest && full) out["U"] += rest * full;
  if (rest && half) out["U_+"] += rest * half;
  return out;
}

Covering build_covering(const Box& V, const Box& Vp, double T0, double T, BoundaryMode mode) {
  const std::size_t n = V.dimension();
  if (n == 0 || V.hi.size() != n || Vp.lo.size() != n || Vp.hi.size() != n)
    throw DimensionMismatch("boxes must share a positive dimension");
  if (!(T0 > 0.0)) throw InvalidArgument("T0 must be positive");
  if (!(T >= T0)) throw InvalidArgument("T must be at least T0");
  double margin = INFINITY;
  for (std::size_t a = 0; a < n; ++a) {
    if (!(V.hi[a] > V.lo[a])) throw InvalidArgument("box V is empty");
    const bool floor_face = mode == BoundaryMode::HalfSpace && a + 1 == n;
    if (floor_face) {
      if (V.lo[a] < 0.0) throw InvalidArgument("V must lie in the half-space x_n >= 0");
      if (Vp.lo[a] > V.lo[a]) throw InvalidArgument("V is not contained in V'");
    } else {
      margin = std::min(margin, V.lo[a] - Vp.lo[a]);
    }
    margin = std::min(margin, Vp.hi[a] - V.hi[a]);
  }
  if (!(margin > 0.0)) throw InvalidArgument("V is not compactly contained in V': no admissible rho");

  Covering c;
  c.V = V;
  c.Vp = Vp;
  c.T0 = T0;
  c.T = T;
  c.mode = mode;
  double rho = margin / 2.0;
  while (!(1000.0 * pow4(rho) < T0) || !(rho < 1.0)) rho /= 2.0;
  c.rho = rho;

  const double r4 = pow4(rho);
  auto k0 = static_cast<std::size_t>(std::floor(T / r4));
  while (static_cast<double>(k0 + 1) * r4 <= T) ++k0;
  while (k0 > 0 && static_cast<double>(k0) * r4 > T) --k0;
  c.k0 = k0;

  // Cell centers of a lattice whose cells have half-diagonal below rho.
  std::vector<std::size_t> m(n);
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) {
    m[a] = static_cast<std::size_t>(std::floor((V.hi[a] - V.lo[a]) * std::sqrt(double(n)) / (2.0 * rho))) + 1;
    total *= m[a];
  }
  c.centers.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> x(n);
    std::size_t rest = idx;
    for (std::size_t a = n; a-- > 0;) {
      const std::size_t i = rest % m[a];
      rest /= m[a];
      const double w = (V.hi[a] - V.lo[a]) / static_cast<double>(m[a]);
      x[a] = V.lo[a] + (static_cast<double>(i) + 0.5) * w;
    }
    c.centers.push_back(std::move(x));
  }
  return c;
}

CoveringAudit audit_covering(const Covering& cover, std::size_t samples, std::uint64_t seed) {
  CoveringAudit audit;
  audit.samples = samples;
  const std::size_t n = cover.V.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r4 = pow4(cover.rho);
  const bool half = cover.mode == BoundaryMode::HalfSpace;

  // V' x [0, T] (V' open; the floor face x_n = 0 is closed in half-space mode).
  auto in_domain = [&](const SpaceTimePoint& p) {
    if (p.t < 0.0 || p.t > cover.T) return false;
    for (std::size_t a = 0; a < n; ++a) {
      if (half && a + 1 == n) {
        if (p.x[a] < 0.0 || (cover.Vp.lo[a] > 0.0 && p.x[a] <= cover.Vp.lo[a])) return false;
      } else if (p.x[a] <= cover.Vp.lo[a]) {
        return false;
      }
      if (p.x[a] >= cover.Vp.hi[a]) return false;
    }
    return true;
  };
  // U_{jk,r} by its definition: the full ball cut to [0, T] (and x_n >= 0).
  auto piece_set = [&](std::size_t j, std::size_t k, double r, const SpaceTimePoint& p) {
    ParabolicBall plain;
    plain.center = {cover.centers[j], cover.time_knot(k)};
    plain.radius = r;
    if (!ball_contains(plain, p)) return false;
    if (p.t < 0.0 || p.t > cover.T) return false;
    return !(half && p.x.back() < 0.0);
  };

  // (3)
  for (std::size_t s = 0; s < samples; ++s) {
    SpaceTimePoint p{std::vector<double>(n), unif(rng) * cover.T};
    for (std::size_t a = 0; a < n; ++a) p.x[a] = cover.V.lo[a] + unif(rng) * (cover.V.hi[a] - cover.V.lo[a]);
    const auto kc = static_cast<long>(std::llround(p.t / r4));
    bool found = false;
    for (std::size_t j = 0; j < cover.N() && !found; ++j) {
      for (long k = kc - 2; k <= kc + 2 && !found; ++k)
        if (k >= 0 && static_cast<std::size_t>(k) <= cover.k0)
          found = piece_set(j, static_cast<std::size_t>(k), cover.rho, p);
      if (!found) found = piece_set(j, cover.k0, cover.rho, p);
    }
    if (!found) ++audit.cover_violations;
  }

  // (1) and (2) on pieces at both ends of [0, T] and at random knots.
  std::vector<std::size_t> knots = end_knots(cover.k0);
  std::uniform_int_distribution<std::size_t> pick_k(0, cover.k0);
  std::uniform_int_distribution<std::size_t> pick_j(0, cover.N() - 1);
  for (int i = 0; i < 20; ++i) knots.push_back(pick_k(rng));
  const std::size_t reps = 4;
  const std::size_t per_piece = std::max<std::size_t>(8, samples / (knots.size() * reps));
  for (std::size_t k : knots) {
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const std::size_t j = rep == 0 ? 0 : pick_j(rng);
      const auto big = cover.piece(j, k, 2 * cover.rho);
      const std::string f = big.form();
      const bool allowed =
          f == "U" || f == "U+" || f == "U-" || (half && (f == "U_+" || f == "U+_+" || f == "U-_+"));
      if (!allowed) ++audit.form_violations;
      for (std::size_t s = 0; s < per_piece; ++s) {
        SpaceTimePoint p{std::vector<double>(n), 0.0};
        const double r = big.radius;
        for (std::size_t a = 0; a < n; ++a) p.x[a] = big.center.x[a] + (2 * unif(rng) - 1) * r;
        p.t = big.center.t + (2 * unif(rng) - 1) * pow4(r);
        const bool in_big = piece_set(j, k, 2 * cover.rho, p);
        if (in_big != ball_contains(big, p)) ++audit.form_violations;
        if (in_big && !in_domain(p)) ++audit.containment_violations;
        if (piece_set(j, k, cover.rho, p) && !in_big) ++audit.containment_violations;
      }
    }
  }
  for (std::size_t k : end_knots(cover.k0)) {
    const double t = cover.time_knot(k);
    if (t - pow4(2 * cover.rho) < 0.0 && t + pow4(2 * cover.rho) > cover.T) audit.pieces_touch_both_ends = true;
  }
  return audit;
}

SubadditivityReport cover_subadditivity_check(const GridFunction& u, const Covering& cover, double alpha,
                                              double beta) {
  const auto& grid = u.grid();
  if (grid.dimension() != cover.V.dimension()) throw DimensionMismatch("grid and covering differ in dimension");
  SubadditivityReport rep;

  Region global = Region::whole(grid);
  std::vector<double> x(grid.dimension());
  for (std::size_t s = 0; s < grid.spatial_size(); ++s) {
    grid.point(s, x);
    global.spatial_mask[s] = cover.V.contains(x) ? 1 : 0;
  }
  global.time_begin = 0;
  while (global.time_begin < grid.time_size() && grid.time(global.time_begin) < 0.0) ++global.time_begin;
  global.time_end = global.time_begin;
  while (global.time_end < grid.time_size() && grid.time(global.time_end) <= cover.T) ++global.time_end;
  rep.spatial_lhs = spatial_seminorm(u, alpha, global);
  rep.temporal_lhs = temporal_seminorm(u, beta, global);

  const double r4 = pow4(cover.rho);
  const auto& ts = grid.times();
  for (std::size_t j = 0; j < cover.N(); ++j) {
    for (std::size_t k = 0; k <= cover.k0; ++k) {
      const auto ball = cover.piece(j, k, cover.rho);
      // Skip knots whose time window holds no samples.
      const auto lo = std::upper_bound(ts.begin(), ts.end(), ball.center.t - r4);
      if (lo == ts.end() || *lo >= ball.center.t + r4) continue;
      auto region = ball_region(grid, ball);
      region.time_begin = std::max(region.time_begin, global.time_begin);
      region.time_end = std::min(region.time_end, global.time_end);
      if (region.active_points() == 0) continue;
      ++rep.pieces_used;
      const double sp = spatial_seminorm(u, alpha, region);
      const double tp = temporal_seminorm(u, beta, region);
      rep.spatial_sum += sp;
      rep.temporal_sum += tp;
      rep.spatial_piece_max = std::max(rep.spatial_piece_max, sp);
      rep.temporal_piece_max = std::max(rep.temporal_piece_max, tp);
      for (std::size_t kk = region.time_begin; kk < region.time_end; ++kk)
        for (std::size_t s = 0; s < grid.spatial_size(); ++s)
          if (region.spatial_mask[s]) rep.sup_norm = std::max(rep.sup_norm, std::abs(u(s, kk)));
    }
  }
  rep.holds = rep.spatial_lhs <= rep.spatial_sum * (1 + 1e-12) && rep.temporal_lhs <= rep.temporal_sum * (1 + 1e-12);
  rep.spatial_constant_bound = 2.0 / std::pow(cover.rho, alpha);
  rep.temporal_constant_bound = 2.0 / std::pow(cover.rho, 4.0 * beta);
  if (rep.sup_norm > 0.0) {
    rep.spatial_constant =
        std::max(0.0, rep.spatial_lhs - static_cast<double>(cover.N()) * rep.spatial_piece_max) / rep.sup_norm;
    rep.temporal_constant = std::max(0.0, rep.temporal_lhs - 4.0 * rep.temporal_piece_max) / rep.sup_norm;
  }
  rep.sharpened_holds = rep.spatial_constant <= rep.spatial_constant_bound * (1 + 1e-12) &&
                        rep.temporal_constant <= rep.temporal_constant_bound * (1 + 1e-12);
  return rep;
}

}  // namespace schauder
