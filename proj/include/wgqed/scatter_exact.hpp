#pragma once

// Exact single-photon scattering from the full quantum theory.
//
// The photon enters from the left. With a_j = sqrt(Gamma_j) exp(i k z_j),
//   r = -1/2 a^T M^{-1} a,
//   t = 1 - 1/2 conj(a)^T M^{-1} a,
// where M_jl = sqrt(Gamma_j Gamma_l)/2 exp(i k |z_j - z_l|)
//            + [gamma_j/2 - i (omega - omega_j)] delta_jl.
// The free-propagation phase is normalised out of t, so an empty waveguide
// transmits t = 1.

#include <vector>

#include <Eigen/Dense>

#include "wgqed/core_model.hpp"

namespace wgqed {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct Amplitudes {
  cd r;
  cd t;
};

// Observables at one probe frequency.
struct ScatterPoint {
  double delta_omega = 0.0;
  cd r;
  cd t;
  double R = 0.0;
  double T = 0.0;
  double phase = 0.0;  // principal value of arg r, in (-pi, pi]
  double loss = 0.0;   // 1 - R - T

  static ScatterPoint from_amplitudes(double delta_omega, Amplitudes a);
};

struct Spectrum {
  FrequencyGrid grid;
  std::vector<ScatterPoint> points;
};

ComplexMatrix build_m_matrix(const EmitterChain& chain, double delta_omega,
                             const PhaseModel& model = PhaseModel::rigid());

// Both amplitudes from a single LU factorisation of M.
// Throws SingularMatrix when the reciprocal condition estimate of M falls
// below machine epsilon.
Amplitudes scatter_exact(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model = PhaseModel::rigid());

cd reflection_exact(const EmitterChain& chain, double delta_omega,
                    const PhaseModel& model = PhaseModel::rigid());
cd transmission_exact(const EmitterChain& chain, double delta_omega,
                      const PhaseModel& model = PhaseModel::rigid());

// One point per grid entry in grid order. Grid points may be evaluated on
// several workers; the first failing frequency (by grid index) is rethrown.
Spectrum sweep_spectrum(const EmitterChain& chain, const FrequencyGrid& grid,
                        const PhaseModel& model = PhaseModel::rigid());

}  // namespace wgqed
