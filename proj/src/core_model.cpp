#include "wgqed/core_model.hpp"

#include <algorithm>
#include <cmath>

#include "wgqed/errors.hpp"

namespace wgqed {

PhaseModel PhaseModel::dispersive(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw InvalidParameter("ratio", "dispersive phase model needs a positive finite omega_0/Gamma_0");
  }
  PhaseModel m;
  m.ratio_ = ratio;
  return m;
}

cd spatial_phase(const PhaseModel& model, double delta_omega, double distance) {
  return std::polar(1.0, model.phase(delta_omega, distance));
}

std::string to_string(Reference ref) {
  return ref == Reference::Resonance ? "omega_0" : "omega_a";
}

EmitterChain::EmitterChain(std::vector<Emitter> atoms, Reference ref)
    : atoms_(std::move(atoms)), ref_(ref) {
  if (atoms_.empty()) throw InvalidParameter("n", "chain needs at least one atom");
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const Emitter& a = atoms_[j];
    if (!std::isfinite(a.z) || !std::isfinite(a.delta)) {
      throw InvalidParameter("atoms", "non-finite position or detuning");
    }
    if (!(a.gamma1d > 0.0) || !std::isfinite(a.gamma1d)) {
      throw InvalidParameter("gamma1d", "must be positive");
    }
    if (!(a.gamma_ext >= 0.0) || !std::isfinite(a.gamma_ext)) {
      throw InvalidParameter("gamma_ext", "must be non-negative");
    }
    if (j > 0 && !(a.z > atoms_[j - 1].z)) {
      throw InvalidParameter("z", "positions must be strictly increasing");
    }
  }
}

bool EmitterChain::lossless() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Emitter& a) { return a.gamma_ext == 0.0; });
}

std::optional<double> EmitterChain::uniform_spacing(double tol) const {
  if (atoms_.size() < 2) return std::nullopt;
  const double d = atoms_[1].z - atoms_[0].z;
  for (std::size_t j = 2; j < atoms_.size(); ++j) {
    if (std::abs(atoms_[j].z - atoms_[j - 1].z - d) > tol) return std::nullopt;
  }
  return d;
}

double EmitterChain::detuning_spread() const noexcept {
  double s = 0.0;
  for (const auto& a : atoms_) s = std::max(s, std::abs(a.delta));
  return s;
}

EmitterChain EmitterChain::with_loss(double gamma_ext) const {
  std::vector<Emitter> atoms = atoms_;
  for (auto& a : atoms) a.gamma_ext = gamma_ext;
  return EmitterChain(std::move(atoms), ref_);
}

EmitterChain EmitterChain::reversed() const {
  const double end = atoms_.back().z;
  std::vector<Emitter> atoms(atoms_.rbegin(), atoms_.rend());
  for (auto& a : atoms) a.z = end - a.z;
  return EmitterChain(std::move(atoms), ref_);
}

FrequencyGrid::FrequencyGrid(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw InvalidParameter("grid", "non-finite frequency");
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw InvalidParameter("grid", "frequencies must be strictly increasing");
    }
  }
}

FrequencyGrid FrequencyGrid::linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw InvalidParameter("grid", "count must be at least 1");
  if (count > 1 && !(hi > lo)) throw InvalidParameter("grid", "max must exceed min");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
  } else {
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) v[i] = lo + step * static_cast<double>(i);
    v.back() = hi;
  }
  return FrequencyGrid(std::move(v));
}

namespace {

void check_builder_args(int n, double d, double gamma1d, double gamma_ext) {
  if (n < 1) throw InvalidParameter("n", "must be at least 1");
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidParameter("d", "must be positive");
  if (!(gamma1d > 0.0)) throw InvalidParameter("gamma1d", "must be positive");
  if (!(gamma_ext >= 0.0)) throw InvalidParameter("gamma_ext", "must be non-negative");
}

}  // namespace

EmitterChain build_uniform_chain(int n, double d, double gamma1d, double gamma_ext) {
  check_builder_args(n, d, gamma1d, gamma_ext);
  std::vector<Emitter> atoms(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    atoms[j] = Emitter{static_cast<double>(j) * d, 0.0, gamma1d, gamma_ext};
  }
  return EmitterChain(std::move(atoms), Reference::Resonance);
}

EmitterChain build_modulated_chain(int n, double d, double delta_step, double gamma1d,
                                   double gamma_ext) {
  check_builder_args(n, d, gamma1d, gamma_ext);
  if (!std::isfinite(delta_step)) throw InvalidParameter("delta_step", "must be finite");
  std::vector<Emitter> atoms(static_cast<std::size_t>(n));
  const double centre = (n + 1) / 2.0;
  for (int j = 1; j <= n; ++j) {
    atoms[j - 1] = Emitter{static_cast<double>(j - 1) * d, (centre - j) * delta_step,
                           gamma1d, gamma_ext};
  }
  // A flat staircase is a uniform chain; omega_a coincides with omega_0.
  return EmitterChain(std::move(atoms),
                      delta_step == 0.0 ? Reference::Resonance : Reference::CentralAtom);
}

EmitterChain ChainSpec::build(double gamma_ext) const {
  if (delta_step == 0.0) return build_uniform_chain(n, d, gamma1d, gamma_ext);
  return build_modulated_chain(n, d, delta_step, gamma1d, gamma_ext);
}

}  // namespace wgqed
