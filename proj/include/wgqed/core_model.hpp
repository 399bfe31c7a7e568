#pragma once

// Chain data model and phase conventions.
//
// Units: every frequency, detuning and decay rate is expressed in units of the
// reference waveguide decay rate Gamma_0, every position in units of the
// reference resonant wavelength lambda_0. The reference wavevector is
// k_0 = 2*pi, so k_0*z is a dimensionless phase.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wgqed {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// How the propagation wavevector depends on the probe detuning.
class PhaseModel {
 public:
  // k = k_0 at every probe frequency.
  static PhaseModel rigid() { return PhaseModel{}; }
  // k = k_0 (1 + delta_omega / ratio), ratio = omega_0 / Gamma_0 > 0.
  static PhaseModel dispersive(double ratio);

  bool is_rigid() const noexcept { return !ratio_; }
  double ratio() const { return ratio_.value(); }

  // Wavevector in units of k_0.
  double relative_wavevector(double delta_omega) const noexcept {
    return ratio_ ? 1.0 + delta_omega / *ratio_ : 1.0;
  }
  // Phase k*distance for a distance given in lambda_0.
  double phase(double delta_omega, double distance) const noexcept {
    return kTwoPi * relative_wavevector(delta_omega) * distance;
  }

  friend bool operator==(const PhaseModel&, const PhaseModel&) = default;

 private:
  std::optional<double> ratio_;
};

// exp(i k(delta_omega) distance).
cd spatial_phase(const PhaseModel& model, double delta_omega, double distance);

struct Emitter {
  double z = 0.0;          // position, lambda_0
  double delta = 0.0;      // omega_j - omega_ref, Gamma_0
  double gamma1d = 1.0;    // decay into the waveguide, Gamma_0
  double gamma_ext = 0.0;  // loss into non-guided modes, Gamma_0

  friend bool operator==(const Emitter&, const Emitter&) = default;
};

// Frequency the detuning grid is measured from.
enum class Reference {
  Resonance,    // omega_0, common transition frequency of a uniform chain
  CentralAtom,  // omega_a, transition frequency of the central atom
};

std::string to_string(Reference ref);

// Immutable, validated description of the scatterers.
class EmitterChain {
 public:
  // Throws InvalidParameter unless positions strictly increase, all
  // gamma1d > 0, all gamma_ext >= 0 and there is at least one atom.
  explicit EmitterChain(std::vector<Emitter> atoms,
                        Reference ref = Reference::Resonance);

  std::span<const Emitter> atoms() const noexcept { return atoms_; }
  const Emitter& operator[](std::size_t j) const { return atoms_[j]; }
  std::size_t size() const noexcept { return atoms_.size(); }
  Reference reference() const noexcept { return ref_; }

  bool lossless() const noexcept;
  // Common nearest-neighbour separation when all gaps agree to tol.
  std::optional<double> uniform_spacing(double tol = 1e-12) const;
  // Largest |delta_j|.
  double detuning_spread() const noexcept;
  double length() const noexcept { return atoms_.back().z - atoms_.front().z; }

  // Same chain with every gamma_ext replaced.
  EmitterChain with_loss(double gamma_ext) const;
  // Mirror image z_j -> z_N - z_j with the atom order (and detunings) reversed.
  EmitterChain reversed() const;

  friend bool operator==(const EmitterChain&, const EmitterChain&) = default;

 private:
  std::vector<Emitter> atoms_;
  Reference ref_;
};

// Strictly increasing list of finite probe detunings.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<double> values);
  // count >= 1 evenly spaced points on [lo, hi]; count == 1 gives {lo}.
  static FrequencyGrid linspace(double lo, double hi, std::size_t count);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

EmitterChain build_uniform_chain(int n, double d, double gamma1d = 1.0,
                                 double gamma_ext = 0.0);

// Linear transition-frequency staircase delta_j = ((n+1)/2 - j) * delta_step,
// j = 1..n, measured from the central-atom frequency. Even n yields
// half-integer multiples of delta_step.
EmitterChain build_modulated_chain(int n, double d, double delta_step,
                                   double gamma1d = 1.0,
                                   double gamma_ext = 0.0);

// Compact parameterisation shared by studies and configs.
struct ChainSpec {
  int n = 1;
  double d = 0.25;
  double delta_step = 0.0;
  double gamma1d = 1.0;

  EmitterChain build(double gamma_ext = 0.0) const;
  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

}  // namespace wgqed
