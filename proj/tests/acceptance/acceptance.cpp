// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "schauder/duhamel.hpp"
#include "schauder/error.hpp"
#include "schauder/evolution.hpp"
#include "schauder/experiments.hpp"
#include "schauder/geometry.hpp"
#include "schauder/halfsphere.hpp"
#include "schauder/holder.hpp"
#include "schauder/oracle.hpp"
#include "schauder/reflection.hpp"
#include "schauder/simon.hpp"

using namespace schauder;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> uniform_times(double T, int steps) {
  std::vector<double> t(steps + 1);
  for (int k = 0; k <= steps; ++k) t[k] = T * k / steps;
  return t;
}

SpectralField random_field(const BasisPtr& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  auto f = SpectralField::zero(basis);
  for (auto& c : f.coeffs) c = g(rng);
  return f;
}

EllipticCoefficients random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> b(n * n), a(n * n, 0.0);
  for (auto& v : b) v = g(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = 0; k < n; ++k) a[i * n + j] += b[i * n + k] * b[j * n + k];
      if (i == j) a[i * n + j] += 0.5;
      a[j * n + i] = a[i * n + j];
    }
  return EllipticCoefficients(n, a);
}

// 1. eigenvalues 0, 2, 2, 6 and the closed forms of phi_0, phi_{1,+-1}
Verdict eigen_table() {
  const auto b = enumerate_modes(3);
  const std::vector<double> want{0, 2, 2, 6};
  double lam_err = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) lam_err = std::max(lam_err, std::abs((*b)[k].eigenvalue - want[k]));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uz(0, 1), uphi(0, 2 * kPi);
  double err = 0.0;
  const auto i0 = b->index_of(0, 0), ip = b->index_of(1, 1), im = b->index_of(1, -1);
  for (int i = 0; i < 10; ++i) {
    const double z = uz(rng), phi = uphi(rng), r = std::sqrt(1 - z * z);
    const Vec3 p{r * std::cos(phi), r * std::sin(phi), z};
    const auto v = b->evaluate(p);
    err = std::max(err, std::abs(v[i0] - 1 / std::sqrt(2 * kPi)));
    err = std::max(err, std::abs(v[ip] - std::sqrt(3 / (2 * kPi)) * p[0]));
    err = std::max(err, std::abs(v[im] - std::sqrt(3 / (2 * kPi)) * p[1]));
  }
  return {lam_err == 0.0 && err < 1e-10, "lambda[0..3] error " + fmt("%.1e", lam_err) + ", max phi error " +
                                             fmt("%.2e", err) + " at 10 points (tol 1e-10)"};
}

// 2. Frobenius Gram deviation, computed here from the quadrature directly
Verdict orthonormality() {
  const auto b = enumerate_modes(8);
  const auto rule = quadrature(20);
  const std::size_t n = b->size();
  std::vector<double> G(n * n, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const auto v = b->evaluate(rule.nodes[q]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) G[i * n + j] += rule.weights[q] * v[i] * v[j];
  }
  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fro += std::pow(G[i * n + j] - (i == j ? 1.0 : 0.0), 2);
  fro = std::sqrt(fro);
  return {fro < 1e-8, std::to_string(n) + " modes, ||G - I||_F = " + fmt("%.2e", fro) + " (tol 1e-8)"};
}

// 3. decay rate 12 and constant kernel component
Verdict decay_rate() {
  const auto b = enumerate_modes(6);
  const auto t = uniform_times(2.0, 200);
  double single = 0.0;
  for (int m : {-2, 0, 2}) {
    const auto r = decay_experiment(SpectralField::unit(b, b->index_of(2, m)), t, DecayNorm::L2);
    single = std::max(single, r.fitted_rate ? std::abs(*r.fitted_rate - 12.0) : 1e300);
  }
  std::mt19937_64 rng(3);
  double worst = 1e300, drift = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto u0 = random_field(b, rng);
    const auto r = decay_experiment(split_parallel_perp(u0).second, t, DecayNorm::L2);
    worst = std::min(worst, r.fitted_rate.value_or(-1e300));
    const auto traj = evolve(u0, nullptr, EvolutionOperator{OperatorKind::HalfDeltaDeltaPlus2}, t);
    for (const auto& s : traj.states)
      for (auto k : {b->index_of(0, 0), b->index_of(1, -1), b->index_of(1, 1)})
        drift = std::max(drift, std::abs(s.coeffs[k] - u0.coeffs[k]));
  }
  return {single <= 1e-6 && worst >= 11.999 && drift <= 1e-12,
          "single-mode |rate - 12| " + fmt("%.2e", single) + " (tol 1e-6), min random rate " + fmt("%.6f", worst) +
              " (>= 11.999), kernel drift " + fmt("%.1e", drift) + " (tol 1e-12)"};
}

// 4. e^{12t} ||u_perp|| non-increasing
Verdict energy() {
  const auto b = enumerate_modes(6);
  const auto t = uniform_times(1.0, 99);
  std::mt19937_64 rng(4);
  double rise = -1e300;
  for (int i = 0; i < 20; ++i) {
    const auto r = decay_experiment(random_field(b, rng), t, DecayNorm::L2);
    for (std::size_t k = 1; k < r.weighted_perp.size(); ++k)
      rise = std::max(rise, r.weighted_perp[k] - r.weighted_perp[k - 1]);
  }
  return {rise <= 1e-12, "20 fields x 100 samples, max increase " + fmt("%.2e", rise) + " (slack 1e-12)"};
}

// 5. Duhamel closed forms and the semigroup property
Verdict duhamel() {
  const auto b = enumerate_modes(4);
  const EvolutionOperator op{OperatorKind::BiLaplacian};
  const std::size_t k6 = b->index_of(2, 0), k0 = b->index_of(0, 0);
  const double c = 0.7, mu = 36.0;
  auto f = SpectralField::zero(b);
  f.coeffs[k6] = c;
  f.coeffs[k0] = c;
  const auto forcing = ForcingSignal::constant(f);
  const auto t = uniform_times(0.5, 10);
  const auto traj = evolve(SpectralField::zero(b), &forcing, op, t);
  double e_mu = 0.0, e_0 = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    e_mu = std::max(e_mu, rel(traj.states[i].coeffs[k6], c / mu * (1 - std::exp(-mu * t[i]))));
    e_0 = std::max(e_0, rel(traj.states[i].coeffs[k0], c * t[i]));
  }
  std::mt19937_64 rng(5);
  const auto u0 = random_field(b, rng);
  const std::vector<double> t1{0.0, 0.13}, t2{0.0, 0.21}, t12{0.0, 0.34};
  const auto mid = evolve(u0, &forcing, op, t1).last();
  const auto composed = evolve(mid, &forcing, op, t2).last();
  const auto direct = evolve(u0, &forcing, op, t12).last();
  double e_sg = 0.0;
  for (std::size_t k = 0; k < b->size(); ++k)
    e_sg = std::max(e_sg, std::abs(composed.coeffs[k] - direct.coeffs[k]) / std::max(1.0, std::abs(direct.coeffs[k])));
  return {e_mu <= 1e-10 && e_0 <= 1e-12 && e_sg <= 1e-12,
          "c/mu(1-e^{-mu t}) rel " + fmt("%.1e", e_mu) + " (1e-10), c t rel " + fmt("%.1e", e_0) +
              " (1e-12), semigroup " + fmt("%.1e", e_sg) + " (1e-12)"};
}

// 6. elliptic inverse
Verdict elliptic() {
  const auto b = enumerate_modes(6);
  std::mt19937_64 rng(6);
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto f = random_field(b, rng);
    f.coeffs[0] = 0.0;
    const auto back = elliptic_solve(apply_bilaplacian(f));
    for (std::size_t k = 0; k < b->size(); ++k) err = std::max(err, std::abs(back.coeffs[k] - f.coeffs[k]));
  }
  bool rejected = false;
  try {
    elliptic_solve(SpectralField::unit(b, 0));
  } catch (const CompatibilityError&) {
    rejected = true;
  }
  return {err <= 1e-12 && rejected,
          "round trip error " + fmt("%.1e", err) + " (tol 1e-12), constant mode " + (rejected ? "rejected" : "ACCEPTED")};
}

// 7. |x|^0.5 seminorm, scaling law, subadditivity over covers
Verdict holder_machinery() {
  auto sqrt_semi = [](std::size_t n) {
    const auto u = GridFunction::sample(SpaceTimeGrid({Axis::span(0, 1, n)}, {0.0}),
                                        [](auto x, double) { return std::sqrt(std::abs(x[0])); });
    return spatial_seminorm(u, 0.5);
  };
  const double s256 = sqrt_semi(256), s512 = sqrt_semi(512);
  const bool sqrt_ok = std::abs(s256 - 1) <= 0.05 && std::abs(s512 - 1) <= std::abs(s256 - 1) + 1e-15;

  // u_l(x, t) = u(l x, l^4 t): same samples on the grid shrunk by 1/l
  std::vector<double> ts(9);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 0.05 * double(k);
  const SpaceTimeGrid g({Axis::span(-1, 1, 11), Axis::span(0, 1, 9)}, ts);
  const auto u = GridFunction::sample(g, [](auto x, double t) {
    return std::sin(1.3 * x[0] + 0.4 * x[1] * x[1]) * std::exp(-t) + x[0] * x[1] * x[1] * t;
  });
  double scale_err = 0.0;
  for (double l : {2.0, 3.0})
    for (int m = 0; m <= 4; ++m) {
      const auto ul = u.on_grid(g.rescaled(1.0 / l));
      const double a = parabolic_seminorm(u, {0.5, m}), bl = parabolic_seminorm(ul, {0.5, m});
      scale_err = std::max(scale_err, rel(bl, std::pow(l, m + 0.5) * a));
    }

  const auto cover = build_covering({{-0.5}, {0.5}}, {{-2.0}, {2.0}}, 1.0, 1.0, BoundaryMode::Interior);
  std::vector<double> tg(81);
  const double r4 = std::pow(cover.rho, 4);
  for (std::size_t k = 0; k < tg.size(); ++k) tg[k] = double(k) * r4 / 4.0;
  const SpaceTimeGrid cg({Axis::span(-0.6, 0.6, 241)}, tg);
  const double tau = tg.back();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gn;
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    double a[6], bb[6], c[6];
    for (int k = 0; k < 6; ++k) a[k] = gn(rng), bb[k] = gn(rng), c[k] = gn(rng);
    const auto f = GridFunction::sample(cg, [&](auto x, double t) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) s += (a[k] + bb[k] * std::cos((k + 1) * t / tau)) * std::sin((k + 1) * 3 * x[0] + c[k]);
      return s;
    });
    if (!cover_subadditivity_check(f, cover, 0.5, 0.25).holds) ++violations;
  }
  return {sqrt_ok && scale_err <= 1e-12 && violations == 0,
          "[|x|^0.5] = " + fmt("%.6f", s256) + " (256 pts), " + fmt("%.6f", s512) + " (512 pts); scaling rel " +
              fmt("%.1e", scale_err) + " (1e-12); cover subadditivity violations " + std::to_string(violations) + "/50"};
}

// 8. T-uniform coverings
Verdict covering() {
  bool same = true, audits = true;
  std::string detail;
  for (auto mode : {BoundaryMode::Interior, BoundaryMode::HalfSpace}) {
    const Box V = mode == BoundaryMode::Interior ? Box{{-1.0}, {1.0}} : Box{{-1.0, 0.0}, {1.0, 1.0}};
    const Box Vp = mode == BoundaryMode::Interior ? Box{{-2.0}, {2.0}} : Box{{-2.0, 0.0}, {2.0, 2.0}};
    double rho0 = 0.0;
    std::size_t n0 = 0;
    for (double T : {1.0, 10.0, 100.0}) {
      const auto c = build_covering(V, Vp, 1.0, T, mode);
      if (T == 1.0) rho0 = c.rho, n0 = c.N();
      same = same && c.rho == rho0 && c.N() == n0;
      audits = audits && audit_covering(c, 10000, 8).ok();
    }
    detail += std::string(mode == BoundaryMode::Interior ? "interior" : "half-space") + " rho=" + fmt("%g", rho0) +
              " N=" + std::to_string(n0) + "; ";
  }
  return {same && audits, detail + "(rho, N) identical for T=1,10,100: " + (same ? "yes" : "NO") +
                              ", 1e4-point audits " + (audits ? "pass" : "FAIL")};
}

// 9. reflection
Verdict reflection() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(-2, 2);
  double inv = 0.0, invol = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 3;
    const auto a = random_spd(rng, n);
    // a^{ij} (delta - 2 delta_n v)(delta - 2 delta_n v), written out
    const auto v = a.reflection_vector();
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        double s = 0.0;
        for (std::size_t i2 = 0; i2 < n; ++i2)
          for (std::size_t j = 0; j < n; ++j) {
            const double Jp = (p == i2 ? 1.0 : 0.0) - 2.0 * (i2 == n - 1 ? 1.0 : 0.0) * v[p];
            const double Jq = (q == j ? 1.0 : 0.0) - 2.0 * (j == n - 1 ? 1.0 : 0.0) * v[q];
            s += a(i2, j) * Jp * Jq;
          }
        inv = std::max(inv, std::abs(s - a(p, q)) / std::max(1.0, a.lambda()));
      }
    std::vector<double> x(n);
    for (auto& c : x) c = ux(rng);
    const auto back = reflection_map(a, reflection_map(a, x));
    for (std::size_t k = 0; k < n; ++k) invol = std::max(invol, std::abs(back[k] - x[k]));
  }
  const auto a = random_spd(rng, 2);
  auto F = [](double x, double y, double t) { return std::exp(0.3 * x - 0.2 * y) * std::sin(0.7 * y + 0.4 + t) + 0.1 * x * y * y; };
  auto exact = [&](std::span<const double> x, double t) {
    const auto y = reflection_map(a, x);
    return F(x[0], x[1], t) + F(y[0], y[1], t);
  };
  bool jumps_ok = true;
  std::string jd;
  for (double h : {0.05, 0.025}) {
    const auto nx = static_cast<std::size_t>(std::lround(2 / h)) + 1, ny = static_cast<std::size_t>(std::lround(1 / h)) + 1;
    const auto u = GridFunction::sample(SpaceTimeGrid({Axis::span(-1, 1, nx), Axis::span(0, 1, ny)}, {0.0, 0.5}), exact);
    const auto ext = reflect_extend(u, a);
    const double worst = *std::max_element(ext.report.jumps.begin(), ext.report.jumps.end());
    jumps_ok = jumps_ok && worst < 10 * h * h;
    jd += " h=" + fmt("%g", h) + ": " + fmt("%.2e", worst) + " < " + fmt("%.2e", 10 * h * h) + ";";
  }
  return {inv <= 1e-12 && invol <= 1e-12 && jumps_ok,
          "invariance " + fmt("%.1e", inv) + " (1e-12, 100 SPD), involution " + fmt("%.1e", invol) + ", max jump" + jd};
}

// 10. Simon absorption on the d41 seminorm
Verdict simon() {
  std::vector<double> ts(121);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = -1.0 + 2.0 * double(k) / double(ts.size() - 1);
  const SpaceTimeGrid g({Axis::span(-1, 1, 41)}, ts);
  const auto u = GridFunction::sample(g, [](auto x, double t) {
    return std::sin(2 * x[0] + 0.5) * std::cos(t) + std::pow(x[0], 5);
  });
  const D41Evaluator d41(u, 0.5);
  SimonConfig cfg;
  cfg.p0 = {{0.0}, 0.0};
  cfg.seed = 10;
  const auto r = simon_absorption_check([&](const ParabolicBall& b) { return d41(ball_region(g, b)); }, cfg);
  return {r.holds && r.delta == 1.0 / (2.0 * double(r.N)),
          "N=" + std::to_string(r.N) + ", delta=1/" + std::to_string(2 * r.N) + ", E=" + fmt("%.4g", r.E) +
              ", C=" + fmt("%.4g", r.C) + ": R^k S = " + fmt("%.4g", r.lhs) + " <= C E = " + fmt("%.4g", r.rhs) +
              "; audits " + (r.audits_ok ? "pass" : "FAIL")};
}

// 11. Schauder ratio probe
Verdict probe() {
  const auto r = schauder_ratio_probe(ProbeConfig{});
  std::string d = "max ratio per T:";
  for (double m : r.max_ratio) d += " " + fmt("%.4f", m);
  return {r.all_finite && r.spread < 2.0, d + "; spread " + fmt("%.4f", r.spread) + " (< 2), all finite: " +
                                              (r.all_finite ? "yes" : "NO")};
}

// 12. interval oracle
Verdict oracle() {
  double worst = 0.0;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    OracleConfig cfg;
    cfg.seed = seed;
    worst = std::max(worst, interval_cross_check(cfg).sup_difference);
  }
  return {worst < 1e-4, "3 random k<=4 data, 401 points, dt=1e-4, t=0.1: sup |spectral - FD| = " + fmt("%.2e", worst) +
                            " (tol 1e-4)"};
}

// 13. interpolation inequalities
Verdict interpolation() {
  const InterpolationStudyConfig cfg;
  const auto st = interpolation_study(cfg);
  const bool disjoint = cfg.test_seed + cfg.test_count <= cfg.calibration_seed;
  return {disjoint && st.report.violations.empty(),
          std::to_string(st.report.violations.size()) + " violations in " + std::to_string(st.report.checks) +
              " checks; C(n)=" + fmt("%.4f", st.constant_theorem) + ", C(n,gamma)=" + fmt("%.4f", st.constant_temporal) +
              " from " + std::to_string(cfg.calibration_count) + " calibration functions (disjoint seeds)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"eigen table", eigen_table},   {"orthonormality", orthonormality}, {"decay rate", decay_rate},
      {"energy monotonicity", energy}, {"duhamel exactness", duhamel},     {"elliptic inverse", elliptic},
      {"holder machinery", holder_machinery}, {"covering T-uniformity", covering}, {"reflection", reflection},
      {"simon absorption", simon},     {"schauder probe", probe},          {"oracle cross-check", oracle},
      {"interpolation inequalities", interpolation}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::printf("%s %2zu %-27s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
