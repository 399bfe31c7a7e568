#pragma once

// Non-Hermitian effective Hamiltonian, its eigenchannels, and the
// infinite-chain band structure.

#include <vector>

#include "wgqed/core_model.hpp"
#include "wgqed/scatter_exact.hpp"

namespace wgqed {

// H_jl = delta_j delta_jl - i sqrt(G_j G_l)/2 exp(i k |z_j - z_l|)
//        [- i gamma_j/2 delta_jl when loss is included].
// Complex symmetric; i M(omega) = omega - H.
struct EffectiveHamiltonian {
  ComplexMatrix h;
};

// k is evaluated at delta_omega (only matters for the dispersive model).
EffectiveHamiltonian build_heff(const EmitterChain& chain,
                                const PhaseModel& model = PhaseModel::rigid(),
                                bool include_loss = true, double delta_omega = 0.0);

enum class Radiance { Superradiant, Subradiant, Boundary };
const char* to_string(Radiance r);

// Decay -Im(lambda) compared against the single-atom rate Gamma_0/2.
Radiance classify_radiance(cd lambda, double tol = 1e-9);

struct Eigenmode {
  cd lambda;
  ComplexVector v;  // v^T v = 1 (unconjugated)
  Radiance radiance = Radiance::Boundary;
  cd overlap;       // (psi_in^T v)^2
};

struct EigenmodeSet {
  std::vector<Eigenmode> modes;
  // Set when some eigenvector had |v^T v| < 1e-8 before rescaling (vicinity
  // of an exceptional point); the set must not be used for the modal sum.
  bool near_defective = false;
  double min_bilinear_norm = 1.0;
};

// Incident field weighted by the coupling, a_j = sqrt(G_j) exp(i k z_j).
// For identical atoms with G_j = Gamma_0 this is the bare phase vector.
ComplexVector incident_vector(const EmitterChain& chain, const PhaseModel& model,
                              double delta_omega);

// Eigenpairs sorted by Re(lambda), then Im(lambda). Eigenvectors within a
// numerically degenerate cluster are re-orthogonalised under the bilinear
// product v^T w.
EigenmodeSet eigenmodes(const EffectiveHamiltonian& h, const ComplexVector& psi_in);

// Eigenchannel sum r = -i/2 sum_xi (a^T v)^2 / (omega - lambda_xi).
// Throws ModalUnavailable for a near-defective Hamiltonian.
cd reflection_modal(const EmitterChain& chain, double delta_omega,
                    const PhaseModel& model = PhaseModel::rigid());

// Caches the eigendecomposition for repeated probes. For the rigid model the
// Hamiltonian does not depend on frequency and is diagonalised once; the
// dispersive model re-diagonalises per probe.
class ModalScatterer {
 public:
  ModalScatterer(EmitterChain chain, PhaseModel model);

  // r as above and t = 1 - i/2 sum_xi (conj(a)^T v)(v^T a) / (omega - lambda_xi).
  Amplitudes operator()(double delta_omega) const;
  const EigenmodeSet& modes() const { return modes_; }

 private:
  Amplitudes evaluate(const EigenmodeSet& set, const ComplexVector& a,
                      double delta_omega) const;

  EmitterChain chain_;
  PhaseModel model_;
  EigenmodeSet modes_;
  ComplexVector incident_;
};

// Infinite uniform chain: omega(K) - omega_0 = (1/2) sin(kd) / (cos(Kd) - cos(kd)).
// Throws DispersionPole when cos(Kd) equals cos(kd).
double dispersion(double kd, double Kd);

struct GapReport {
  double kd = 0.0;
  double edge_upper = 0.0;
  double edge_lower = 0.0;
  double width = 0.0;

  double center() const { return 0.5 * (edge_upper + edge_lower); }
};

// Gap of the infinite chain between the Kd = 0 and Kd = pi band edges;
// width = 1/|sin kd|. Throws BraggDivergence when sin(kd) vanishes.
GapReport bandgap(double kd);

}  // namespace wgqed
