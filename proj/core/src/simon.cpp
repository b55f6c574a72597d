#include "schauder/simon.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "schauder/error.hpp"

namespace schauder {

namespace {

double pow4(double r) { return r * r * r * r; }

std::size_t spatial_cells(std::size_t n, double q) {
  return static_cast<std::size_t>(std::floor(2.0 * q * std::sqrt(static_cast<double>(n)))) + 1;
}

std::size_t time_slots(double q) { return static_cast<std::size_t>(std::floor(16.0 * pow4(q))) + 1; }

bool in_A(const ParabolicBall& shape, const SpaceTimePoint& p) {
  if (shape.time_above && p.t < shape.time_floor) return false;
  if (shape.time_below && p.t > shape.time_ceiling) return false;
  if (shape.space_half && p.x.back() < 0.0) return false;
  return true;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

class Sampler {
 public:
  Sampler(const ParabolicBall& shape, std::uint64_t seed) : shape_(shape), rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Center y in A with U_r(y) inside U_R(p) by the sufficient condition.
  std::optional<SpaceTimePoint> inner_center(const SpaceTimePoint& p, double R, double r) {
    const double rs = R - r;
    const double rt = pow4(R) - pow4(r);
    if (rs < 0.0 || rt < 0.0) return std::nullopt;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      SpaceTimePoint y{p.x, p.t + uniform(-rt, rt)};
      for (auto& c : y.x) c += uniform(-rs, rs);
      if (dist(y.x, p.x) > rs) continue;
      if (!in_A(shape_, y)) continue;
      return y;
    }
    return std::nullopt;
  }

 private:
  const ParabolicBall& shape_;
  std::mt19937_64 rng_;
};

}  // namespace

std::size_t covering_number(std::size_t n, double ratio) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  if (!(ratio > 1.0)) throw InvalidArgument("covering ratio must exceed 1");
  std::size_t cells = 1;
  for (std::size_t a = 0; a < n; ++a) cells *= spatial_cells(n, ratio);
  return cells * time_slots(ratio);
}

std::vector<SpaceTimePoint> cover_ball(const ParabolicBall& shape, const SpaceTimePoint& p, double r2, double r1) {
  const std::size_t n = p.x.size();
  if (n == 0) throw InvalidArgument("dimension must be positive");
  if (shape.center.x.size() != n && !shape.center.x.empty())
    throw DimensionMismatch("shape and center differ in dimension");
  if (!(r2 > r1 && r1 > 0.0)) throw InvalidArgument("cover_ball needs r2 > r1 > 0");
  const double q = r2 / r1;
  const std::size_t m = spatial_cells(n, q);
  const std::size_t mt = time_slots(q);
  const double w = 2.0 * r2 / static_cast<double>(m);
  const double wt = 2.0 * pow4(r2) / static_cast<double>(mt);

  std::vector<SpaceTimePoint> out;
  std::vector<std::size_t> idx(n, 0);
  std::size_t spatial_total = 1;
  for (std::size_t a = 0; a < n; ++a) spatial_total *= m;
  for (std::size_t c = 0; c < spatial_total; ++c) {
    std::size_t rest = c;
    std::vector<double> lo(n), hi(n);
    for (std::size_t a = n; a-- > 0;) {
      idx[a] = rest % m;
      rest /= m;
      lo[a] = p.x[a] - r2 + static_cast<double>(idx[a]) * w;
      hi[a] = lo[a] + w;
    }
    if (shape.space_half) lo[n - 1] = std::max(lo[n - 1], 0.0);
    if (lo[n - 1] > hi[n - 1]) continue;
    // Closest point of the (truncated) cell to p.
    std::vector<double> x(n);
    for (std::size_t a = 0; a < n; ++a) x[a] = std::clamp(p.x[a], lo[a], hi[a]);
    if (!(dist(x, p.x) < r2)) continue;
    for (std::size_t s = 0; s < mt; ++s) {
      double tlo = p.t - pow4(r2) + static_cast<double>(s) * wt;
      double thi = tlo + wt;
      if (shape.time_above) tlo = std::max(tlo, shape.time_floor);
      if (shape.time_below) thi = std::min(thi, shape.time_ceiling);
      if (tlo > thi) continue;
      const double t = std::clamp(p.t, tlo, thi);
      if (!(std::abs(t - p.t) < pow4(r2))) continue;
      out.push_back(SpaceTimePoint{x, t});
    }
  }
  return out;
}

std::size_t audit_cover_ball(const ParabolicBall& shape, const SpaceTimePoint& p, double r2, double r1,
                             std::size_t samples, std::uint64_t seed) {
  const auto centers = cover_ball(shape, p, r2, r1);
  const ParabolicBall big = shape.with(p, r2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::size_t violations = 0;
  std::size_t drawn = 0;
  for (std::size_t attempt = 0; drawn < samples && attempt < 100 * samples; ++attempt) {
    SpaceTimePoint z{p.x, p.t + unif(rng) * pow4(r2)};
    for (auto& c : z.x) c += unif(rng) * r2;
    if (!ball_contains(big, z)) continue;
    ++drawn;
    bool covered = false;
    for (const auto& c : centers)
      if (ball_contains(shape.with(c, r1), z)) {
        covered = true;
        break;
      }
    if (!covered) ++violations;
  }
  for (const auto& c : centers)
    if (!ball_contains(big, c)) ++violations;
  return violations;
}

SimonReport simon_absorption_check(const BallFunctional& S, const SimonConfig& cfg) {
  const std::size_t n = cfg.p0.x.size();
  if (n == 0) throw InvalidArgument("p0 must have a spatial part");
  if (!(cfg.R > 0.0)) throw InvalidArgument("R must be positive");
  if (!(cfg.nu > 0.0 && cfg.nu <= 1.0)) throw InvalidArgument("nu must lie in (0, 1]");
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  if (!in_A(cfg.shape, cfg.p0)) throw InvalidArgument("p0 must lie in A");

  SimonReport rep;
  rep.N = covering_number(n, 1.0 / cfg.theta);
  rep.M = cfg.nu < 1.0 ? covering_number(n, 1.0 / cfg.nu) : 1;
  rep.delta_threshold = 1.0 / (2.0 * static_cast<double>(rep.N));
  rep.delta = cfg.delta.value_or(rep.delta_threshold);
  rep.C = std::pow(cfg.nu, -cfg.k) * static_cast<double>(rep.M) * 2.0 * static_cast<double>(rep.N) /
          std::pow(cfg.theta, cfg.k);

  auto omega = [&](const SpaceTimePoint& c, double r) { return cfg.shape.with(c, r); };
  Sampler sampler(cfg.shape, cfg.seed);
  const double R = cfg.R;

  // Covering claims behind N and M.
  rep.cover_audit_violations += audit_cover_ball(cfg.shape, cfg.p0, R, cfg.theta * R, cfg.cover_audit_samples,
                                                 cfg.seed + 1);
  if (cfg.nu < 1.0)
    rep.cover_audit_violations += audit_cover_ball(cfg.shape, cfg.p0, cfg.theta * R, cfg.theta * cfg.nu * R,
                                                   cfg.cover_audit_samples, cfg.seed + 2);

  // Monotonicity on random nested pairs.
  for (std::size_t i = 0; i < cfg.monotone_samples; ++i) {
    const double r_out = sampler.uniform(cfg.min_radius_fraction, 1.0) * R;
    auto y_out = sampler.inner_center(cfg.p0, R, r_out);
    if (!y_out) continue;
    const double r_in = sampler.uniform(0.1, 1.0) * r_out;
    auto y_in = sampler.inner_center(*y_out, r_out, r_in);
    if (!y_in) continue;
    ++rep.monotone_checked;
    const double s_in = S(omega(*y_in, r_in));
    const double s_out = S(omega(*y_out, r_out));
    if (s_in > s_out + 1e-12 * std::max(1.0, std::abs(s_out))) ++rep.monotone_violations;
  }

  // Subadditivity on Omega_r(p) covered by the Omega_{theta r}(q_i).
  for (std::size_t i = 0; i < cfg.subadditive_samples; ++i) {
    const double r = sampler.uniform(cfg.subadditive_radius_lo, cfg.subadditive_radius_hi) * R;
    auto p = sampler.inner_center(cfg.p0, R, r);
    if (!p) continue;
    ++rep.subadditive_checked;
    double sum = 0.0;
    for (const auto& q : cover_ball(cfg.shape, *p, r, cfg.theta * r)) sum += S(omega(q, cfg.theta * r));
    const double whole = S(omega(*p, r));
    if (whole > sum + 1e-12 * std::max(1.0, std::abs(sum))) ++rep.subadditive_violations;
  }

  // Hypothesis on sampled sub-balls.
  std::vector<double> slack;
  for (std::size_t i = 0; i < cfg.hypothesis_samples; ++i) {
    const double rho = sampler.uniform(cfg.min_radius_fraction, cfg.nu) * R;
    auto y = sampler.inner_center(cfg.p0, R, rho);
    if (!y) continue;
    const double rk = std::pow(rho, cfg.k);
    slack.push_back(rk * S(omega(*y, cfg.theta * rho)) - rep.delta * rk * S(omega(*y, rho)));
  }
  rep.hypothesis_samples = slack.size();
  for (double s : slack) rep.measured_slack = std::max(rep.measured_slack, s);
  rep.E = cfg.E.value_or(rep.measured_slack);
  for (double s : slack)
    if (s > rep.E + 1e-12 * std::max(1.0, std::abs(rep.E))) ++rep.hypothesis_violations;

  rep.lhs = std::pow(R, cfg.k) * S(omega(cfg.p0, cfg.theta * R));
  rep.rhs = rep.C * rep.E;
  rep.audits_ok = rep.monotone_violations == 0 && rep.subadditive_violations == 0 && rep.cover_audit_violations == 0;
  rep.holds = rep.audits_ok && rep.hypothesis_violations == 0 && rep.delta <= rep.delta_threshold &&
              rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

}  // namespace schauder
