#include "wgqed/scatter_classical.hpp"

#include <cmath>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

constexpr double kDivergenceFloor = 1e-300;
constexpr double kDenominatorFloor = 1e-14;

MirrorCoefficients atom_mirror(const Emitter& a, double delta_omega) {
  return single_atom_rt(delta_omega - a.delta, a.gamma1d, a.gamma_ext);
}

}  // namespace

MirrorCoefficients single_atom_rt(double delta_omega, double gamma1d, double gamma_ext) {
  if (!(gamma1d > 0.0)) throw InvalidParameter("gamma1d", "must be positive");
  const cd denom(gamma1d + gamma_ext, -2.0 * delta_omega);
  return {-gamma1d / denom, -cd(gamma_ext, -2.0 * delta_omega) / denom};
}

cd forward_transmission(const MirrorCoefficients& m) { return -m.t; }

TwoPortMatrix matching_matrix(const MirrorCoefficients& m) {
  if (m.t == 0.0) throw ResonantDivergence(0.0, "matching matrix undefined for t = 0");
  const cd inv = 1.0 / m.t;
  return {(m.t * m.t - m.r * m.r) * inv, m.r * inv, -m.r * inv, inv};
}

TwoPortMatrix propagation_matrix(double phase) {
  return {std::polar(1.0, phase), 0.0, 0.0, std::polar(1.0, -phase)};
}

cd fabry_perot_reflection(const MirrorCoefficients& first, const MirrorCoefficients& second,
                          double one_way_phase) {
  const cd round_trip = std::polar(1.0, 2.0 * one_way_phase);
  return first.r +
         first.t * first.t * second.r * round_trip / (1.0 - first.r * second.r * round_trip);
}

Amplitudes recurrence_rt(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model) {
  const std::size_t n = chain.size();
  MirrorCoefficients last = atom_mirror(chain[n - 1], delta_omega);
  cd big_r = last.r;
  cd big_t = forward_transmission(last);
  for (std::size_t j = n - 1; j-- > 0;) {
    const MirrorCoefficients m = atom_mirror(chain[j], delta_omega);
    const double kd = model.phase(delta_omega, chain[j + 1].z - chain[j].z);
    const cd round_trip = std::polar(1.0, 2.0 * kd);
    const cd denom = 1.0 - m.r * big_r * round_trip;
    if (std::abs(denom) < kDenominatorFloor) {
      throw ResonantDivergence(delta_omega, "recurrence denominator vanishes");
    }
    big_t = forward_transmission(m) * big_t * std::polar(1.0, kd) / denom;
    big_r = m.r + m.t * m.t * big_r * round_trip / denom;
  }
  const double z0 = chain[0].z;
  const double span = chain.length();
  return {big_r * spatial_phase(model, delta_omega, 2.0 * z0),
          big_t * spatial_phase(model, delta_omega, -span)};
}

cd recurrence_reflection(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model) {
  return recurrence_rt(chain, delta_omega, model).r;
}

MirrorCoefficients transfer_matrix_rt(const EmitterChain& chain, double delta_omega,
                                      const PhaseModel& model) {
  TwoPortMatrix product = TwoPortMatrix::identity();
  cd t_scale = 1.0;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (j > 0) {
      product = product * propagation_matrix(model.phase(delta_omega, chain[j].z - chain[j - 1].z));
    }
    const MirrorCoefficients m = atom_mirror(chain[j], delta_omega);
    const cd t = forward_transmission(m);
    // t * M_a
    product = product * TwoPortMatrix{t * t - m.r * m.r, m.r, -m.r, 1.0};
    t_scale *= t;
  }
  if (std::abs(product.m22) < kDivergenceFloor) {
    throw ResonantDivergence(delta_omega, "transfer matrix M22 vanishes");
  }
  const double z0 = chain[0].z;
  const double span = chain.length();
  return {product.m12 / product.m22 * spatial_phase(model, delta_omega, 2.0 * z0),
          t_scale / product.m22 * spatial_phase(model, delta_omega, -span)};
}

TwoPortMatrix ensemble_transfer_matrix(const EmitterChain& chain, double delta_omega,
                                       const PhaseModel& model) {
  TwoPortMatrix product = TwoPortMatrix::identity();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (j > 0) {
      product = product * propagation_matrix(model.phase(delta_omega, chain[j].z - chain[j - 1].z));
    }
    product = product * matching_matrix(atom_mirror(chain[j], delta_omega));
  }
  return product;
}

}  // namespace wgqed
