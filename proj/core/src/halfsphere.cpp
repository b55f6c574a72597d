#include "schauder/halfsphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schauder/error.hpp"

namespace schauder {

namespace {

constexpr double kPi = std::numbers::pi;

// ptilde[l][m] = normalized associated Legendre function of (l, m) divided
// by sin(theta)^m, i.e. a polynomial in x = cos(theta). Normalized so that
// the full-sphere real harmonic is ptilde * (sqrt 2 if m != 0) * Re/Im (w1 + i w2)^m.
void legendre_table(int lmax, double x, std::vector<double>& table) {
  const auto n = static_cast<std::size_t>(lmax + 1);
  table.assign(n * n, 0.0);
  auto at = [&](int l, int m) -> double& {
    return table[static_cast<std::size_t>(l) * n + static_cast<std::size_t>(m)];
  };
  at(0, 0) = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 1; m <= lmax; ++m) at(m, m) = at(m - 1, m - 1) * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  for (int m = 0; m < lmax; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double ll = static_cast<double>(l) * l;
      const double mm = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
      const double lm1 = static_cast<double>(l - 1);
      const double b = std::sqrt((lm1 * lm1 - mm) / (4.0 * lm1 * lm1 - 1.0));
      at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
    }
  }
}

void check_on_sphere(const Vec3& p) {
  const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  if (std::abs(r - 1.0) > 1e-10) throw InvalidArgument("point is not on the unit sphere");
}

double mode_value(const Eigenmode& mode, const Vec3& p) {
  const int am = std::abs(mode.order);
  std::vector<double> table;
  legendre_table(mode.degree, p[2], table);
  const double pl = table[static_cast<std::size_t>(mode.degree) * static_cast<std::size_t>(mode.degree + 1) +
                          static_cast<std::size_t>(am)];
  // (w1 + i w2)^|m|
  double re = 1.0;
  double im = 0.0;
  for (int k = 0; k < am; ++k) {
    const double nr = re * p[0] - im * p[1];
    im = re * p[1] + im * p[0];
    re = nr;
  }
  const double sqrt2 = std::numbers::sqrt2;
  if (mode.order == 0) return sqrt2 * pl;
  return 2.0 * pl * (mode.order > 0 ? re : im);
}

}  // namespace

Eigenmode Eigenmode::make(int degree, int order) {
  if (degree < 0 || degree > kMaxDegree) throw InvalidArgument("degree out of range 0..64");
  if (std::abs(order) > degree) throw InvalidArgument("order must satisfy |m| <= l");
  if ((degree + std::abs(order)) % 2 != 0)
    throw InvalidArgument("mode (" + std::to_string(degree) + "," + std::to_string(order) +
                          ") is odd under reflection across the equator");
  const int am = std::abs(order);
  const double log_ratio = std::lgamma(degree - am + 1.0) - std::lgamma(degree + am + 1.0);
  double full = std::sqrt((2.0 * degree + 1.0) / (4.0 * kPi) * std::exp(log_ratio));
  if (order != 0) full *= std::numbers::sqrt2;
  return Eigenmode{degree, order, static_cast<double>(degree) * (degree + 1), std::numbers::sqrt2 * full};
}

ModeBasis::ModeBasis(std::vector<Eigenmode> modes) : modes_(std::move(modes)) {
  if (modes_.empty() || modes_[0].degree != 0) throw InvalidArgument("basis must start with the constant mode");
  for (std::size_t k = 1; k < modes_.size(); ++k) {
    const auto& a = modes_[k - 1];
    const auto& b = modes_[k];
    const bool ordered = a.eigenvalue < b.eigenvalue ||
                         (a.eigenvalue == b.eigenvalue &&
                          (a.degree < b.degree || (a.degree == b.degree && a.order < b.order)));
    if (!ordered) throw InvalidArgument("modes must be distinct and ordered");
  }
  for (const auto& m : modes_) max_degree_ = std::max(max_degree_, m.degree);
}

std::size_t ModeBasis::index_of(int degree, int order) const {
  for (std::size_t k = 0; k < modes_.size(); ++k)
    if (modes_[k].degree == degree && modes_[k].order == order) return k;
  throw InvalidArgument("mode (" + std::to_string(degree) + "," + std::to_string(order) + ") not in basis");
}

bool ModeBasis::contains(int degree, int order) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [&](const Eigenmode& m) { return m.degree == degree && m.order == order; });
}

void ModeBasis::evaluate(const Vec3& p, std::span<double> out) const {
  std::vector<double> table;
  legendre_table(max_degree_, p[2], table);
  const auto n = static_cast<std::size_t>(max_degree_ + 1);
  std::vector<double> re(n), im(n);
  re[0] = 1.0;
  im[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    re[k] = re[k - 1] * p[0] - im[k - 1] * p[1];
    im[k] = re[k - 1] * p[1] + im[k - 1] * p[0];
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& mode = modes_[i];
    const auto am = static_cast<std::size_t>(std::abs(mode.order));
    const double pl = table[static_cast<std::size_t>(mode.degree) * n + am];
    if (mode.order == 0)
      out[i] = std::numbers::sqrt2 * pl;
    else
      out[i] = 2.0 * pl * (mode.order > 0 ? re[am] : im[am]);
  }
}

std::vector<double> ModeBasis::evaluate(const Vec3& point) const {
  std::vector<double> out(modes_.size());
  evaluate(point, out);
  return out;
}

BasisPtr enumerate_modes(int l_max) {
  if (l_max < 0 || l_max > kMaxDegree) throw InvalidArgument("l_max must lie in 0..64");
  std::vector<Eigenmode> modes;
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m)
      if ((l + std::abs(m)) % 2 == 0) modes.push_back(Eigenmode::make(l, m));
  return std::make_shared<const ModeBasis>(std::move(modes));
}

double eval_mode(const Eigenmode& mode, const Vec3& point) {
  check_on_sphere(point);
  if (point[2] < -1e-10) throw InvalidArgument("point lies below the equator");
  return mode_value(mode, point);
}

double eval_mode_extended(const Eigenmode& mode, const Vec3& point) {
  check_on_sphere(point);
  return mode_value(mode, point);
}

Vec3 sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre needs at least one node");
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

QuadratureRule quadrature(int order) {
  if (order < 1) throw InvalidArgument("quadrature order must be at least 1");
  const auto [xi, wi] = gauss_legendre(order);
  const int nphi = 2 * order;
  QuadratureRule rule;
  rule.order = order;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double x = 0.5 * (xi[i] + 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / nphi;
      rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), x});
      rule.weights.push_back(0.5 * wi[i] * 2.0 * kPi / nphi);
    }
  }
  return rule;
}

SpectralField SpectralField::zero(BasisPtr basis) {
  const auto n = basis->size();
  return SpectralField{std::move(basis), std::vector<double>(n, 0.0)};
}

SpectralField SpectralField::unit(BasisPtr basis, std::size_t k) {
  auto f = zero(std::move(basis));
  f.coeffs.at(k) = 1.0;
  return f;
}

double SpectralField::value_at(const Vec3& point) const {
  const auto vals = basis->evaluate(point);
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * vals[k];
  return acc;
}

double SpectralField::l2_norm() const {
  double acc = 0.0;
  for (double c : coeffs) acc += c * c;
  return std::sqrt(acc);
}

void require_same_basis(const SpectralField& a, const SpectralField& b) {
  if (!a.basis || !b.basis) throw BasisMismatch("spectral field without basis");
  if (a.basis != b.basis && !(*a.basis == *b.basis)) throw BasisMismatch("spectral fields use different bases");
  if (a.coeffs.size() != b.coeffs.size()) throw BasisMismatch("coefficient count differs");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_basis(*this, other);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += other.coeffs[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (double& c : coeffs) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) {
  require_same_basis(a, b);
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) a.coeffs[k] -= b.coeffs[k];
  return a;
}
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double gram_deviation(const ModeBasis& basis, const QuadratureRule& rule) {
  const std::size_t n = basis.size();
  std::vector<double> gram(n * n, 0.0);
  std::vector<double> vals(n);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    basis.evaluate(rule.nodes[q], vals);
    const double w = rule.weights[q];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) gram[i * n + j] += w * vals[i] * vals[j];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double d = gram[i * n + j] - (i == j ? 1.0 : 0.0);
      acc += (i == j ? 1.0 : 2.0) * d * d;
    }
  return std::sqrt(acc);
}

SpectralField project(const SphereFunction& f, BasisPtr basis, const QuadratureRule& rule) {
  const double dev = gram_deviation(*basis, rule);
  if (dev > 1e-8)
    throw QuadratureError("quadrature order " + std::to_string(rule.order) +
                          " does not resolve degree " + std::to_string(basis->max_degree()) +
                          " (Gram deviation " + std::to_string(dev) + ")");
  auto out = SpectralField::zero(basis);
  std::vector<double> vals(basis->size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    basis->evaluate(rule.nodes[q], vals);
    const double fw = f(rule.nodes[q]) * rule.weights[q];
    for (std::size_t k = 0; k < vals.size(); ++k) out.coeffs[k] += fw * vals[k];
  }
  return out;
}

std::pair<SpectralField, SpectralField> split_parallel_perp(const SpectralField& f) {
  const auto& basis = *f.basis;
  if (!basis.contains(0, 0) || !basis.contains(1, -1) || !basis.contains(1, 1))
    throw InvalidArgument("basis lacks the kernel modes (l <= 1)");
  auto parallel = SpectralField::zero(f.basis);
  auto perp = f;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].degree <= 1) {
      parallel.coeffs[k] = f.coeffs[k];
      perp.coeffs[k] = 0.0;
    }
  }
  return {parallel, perp};
}

double laplace_beltrami_fd(const SphereFunction& f, double theta, double phi, double h) {
  const double s = std::sin(theta);
  const double f0 = f(sphere_point(theta, phi));
  const double fp = f(sphere_point(theta + h, phi));
  const double fm = f(sphere_point(theta - h, phi));
  const double polar = (std::sin(theta + 0.5 * h) * (fp - f0) - std::sin(theta - 0.5 * h) * (f0 - fm)) / (h * h * s);
  const double ap = f(sphere_point(theta, phi + h));
  const double am = f(sphere_point(theta, phi - h));
  return polar + (ap - 2.0 * f0 + am) / (h * h * s * s);
}

}  // namespace schauder
