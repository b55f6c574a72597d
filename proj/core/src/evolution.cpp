#include "schauder/evolution.hpp"

#include <cmath>
#include <string>

#include "schauder/error.hpp"

namespace schauder {

double EvolutionOperator::mode_rate(double lambda) const {
  switch (kind) {
    case OperatorKind::BiLaplacian:
      return lambda * lambda;
    case OperatorKind::HalfDeltaDeltaPlus2:
      return 0.5 * lambda * (lambda - 2.0);
  }
  return 0.0;
}

std::vector<double> EvolutionOperator::rates(const ModeBasis& basis) const {
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& m : basis.modes()) out.push_back(mode_rate(m.eigenvalue));
  return out;
}

std::string_view EvolutionOperator::name() const {
  return kind == OperatorKind::BiLaplacian ? "bilaplacian" : "half_delta_delta_plus_2";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view name) {
  if (name == "bilaplacian") return OperatorKind::BiLaplacian;
  if (name == "half_delta_delta_plus_2") return OperatorKind::HalfDeltaDeltaPlus2;
  return std::nullopt;
}

ForcingSignal ForcingSignal::constant(const SpectralField& value) { return ForcingSignal{{0.0}, {value}}; }

SpectralField ForcingSignal::at(double t) const {
  if (samples.empty()) throw InvalidArgument("empty forcing signal");
  PiecewiseLinearSignal sig;
  sig.times = times;
  for (const auto& s : samples) sig.rows.push_back(s.coeffs);
  auto out = SpectralField::zero(samples.front().basis);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = sig.value(k, t);
  return out;
}

namespace {

PiecewiseLinearSignal to_signal(const SpectralField& u0, const ForcingSignal* forcing) {
  PiecewiseLinearSignal sig;
  if (!forcing) return sig;
  if (forcing->samples.empty()) throw InvalidArgument("forcing needs at least one sample");
  if (forcing->samples.size() != forcing->times.size())
    throw InvalidArgument("forcing times and samples differ in count");
  for (const auto& s : forcing->samples) {
    require_same_basis(u0, s);
    sig.rows.push_back(s.coeffs);
  }
  sig.times = forcing->times;
  return sig;
}

}  // namespace

Trajectory evolve(const SpectralField& u0, const ForcingSignal* forcing, const EvolutionOperator& op,
                  std::span<const double> t_grid) {
  const auto signal = to_signal(u0, forcing);
  const auto rates = op.rates(*u0.basis);
  const auto rows = evolve_modes(rates, u0.coeffs, signal, t_grid);
  Trajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  for (const auto& row : rows) traj.states.push_back(SpectralField{u0.basis, row});
  return traj;
}

std::vector<SpectralField> time_derivative(const Trajectory& traj, const ForcingSignal* forcing,
                                           const EvolutionOperator& op) {
  std::vector<SpectralField> out;
  if (traj.states.empty()) return out;
  const auto signal = to_signal(traj.states.front(), forcing);
  const auto rates = op.rates(*traj.states.front().basis);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    auto d = traj.states[i];
    for (std::size_t k = 0; k < d.coeffs.size(); ++k)
      d.coeffs[k] = (signal.empty() ? 0.0 : signal.value(k, traj.times[i])) - rates[k] * traj.states[i].coeffs[k];
    out.push_back(std::move(d));
  }
  return out;
}

SpectralField elliptic_solve(const SpectralField& f) {
  const auto& basis = *f.basis;
  auto u = SpectralField::zero(f.basis);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double lambda = basis[k].eigenvalue;
    if (lambda == 0.0) {
      if (std::abs(f.coeffs[k]) > 1e-10)
        throw CompatibilityError("data has nonzero mean (constant-mode coefficient " +
                                 std::to_string(f.coeffs[k]) + "); no mean-zero solution exists");
      continue;
    }
    u.coeffs[k] = f.coeffs[k] / (lambda * lambda);
  }
  return u;
}

SpectralField apply_bilaplacian(const SpectralField& u) {
  auto out = u;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    const double lambda = (*u.basis)[k].eigenvalue;
    out.coeffs[k] *= lambda * lambda;
  }
  return out;
}

}  // namespace schauder
