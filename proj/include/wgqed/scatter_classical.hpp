#pragma once

// Classical multiple-scattering engines built from single-atom mirrors.
// They are independent of the coupling-matrix route in scatter_exact.hpp and
// serve as its oracle.

#include "wgqed/core_model.hpp"
#include "wgqed/scatter_exact.hpp"

namespace wgqed {

struct MirrorCoefficients {
  cd r;
  cd t;
};

struct TwoPortMatrix {
  cd m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

  static TwoPortMatrix identity() { return {}; }
  cd determinant() const { return m11 * m22 - m12 * m21; }
  friend TwoPortMatrix operator*(const TwoPortMatrix& a, const TwoPortMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
};

// Single two-level atom, identical from either side:
//   r = -G / (G + g - 2i dw),   t = -(g - 2i dw) / (G + g - 2i dw).
// The overall sign of t is a phase convention; composites that report a
// transmission amplitude use the forward-propagating form 1 + r (see
// forward_transmission).
MirrorCoefficients single_atom_rt(double delta_omega, double gamma1d, double gamma_ext);

// 1 + r: the transmission amplitude of a point scatterer with the incident
// field continuing through it. Equal to -t of single_atom_rt.
cd forward_transmission(const MirrorCoefficients& m);

// Matching matrix (1/t) [[t^2 - r^2, r], [-r, 1]] relating fields left of an
// atom to fields right of it. Throws ResonantDivergence when t == 0.
TwoPortMatrix matching_matrix(const MirrorCoefficients& m);

// diag(exp(i k d), exp(-i k d)).
TwoPortMatrix propagation_matrix(double phase);

// Two mirrors separated by a gap with one-way phase kd:
//   r_1 + t_1^2 r_2 e^{2ikd} / (1 - r_1 r_2 e^{2ikd}).
cd fabry_perot_reflection(const MirrorCoefficients& first, const MirrorCoefficients& second,
                          double one_way_phase);

// Backward recurrence R_N = r_N,
//   R_j = r_j + t_j^2 R_{j+1} e^{2ik d_j} / (1 - r_j R_{j+1} e^{2ik d_j}),
// with d_j = z_{j+1} - z_j. Referenced to z = 0 like the exact engine.
// Throws ResonantDivergence when a denominator vanishes.
cd recurrence_reflection(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model = PhaseModel::rigid());

// Reflection and transmission by the same backward sweep; the transmission
// recurrence T_j = t_j T_{j+1} e^{ik d_j} / (1 - r_j R_{j+1} e^{2ik d_j}) uses
// forward_transmission and is normalised so an empty waveguide gives 1.
Amplitudes recurrence_rt(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model = PhaseModel::rigid());

// Ensemble transfer matrix M_a(1) M_p(d_1) M_a(2) ... M_a(N) (no trailing
// propagation, so the empty product is the identity). Each matching matrix is
// carried as t * M_a, which stays finite on resonance; the scale cancels in
// r = M12/M22 and is restored in t = 1/M22. Amplitudes are referenced like the
// exact engine. Throws ResonantDivergence when |M22| < 1e-300.
MirrorCoefficients transfer_matrix_rt(const EmitterChain& chain, double delta_omega,
                                      const PhaseModel& model = PhaseModel::rigid());

// Unscaled ensemble product as written, (M_a M_p)(M_a M_p)...M_a. Requires
// t != 0 for every atom.
TwoPortMatrix ensemble_transfer_matrix(const EmitterChain& chain, double delta_omega,
                                       const PhaseModel& model = PhaseModel::rigid());

}  // namespace wgqed
