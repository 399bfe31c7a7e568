#include "wgqed/eigen_band.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

constexpr double kDefectiveNorm = 1e-8;
constexpr double kClusterTol = 1e-7;
constexpr double kBraggFloor = 1e-12;

cd bilinear(const ComplexVector& a, const ComplexVector& b) { return a.cwiseProduct(b).sum(); }

// Unconjugated Gram-Schmidt within one degenerate cluster, pivoting on the
// largest bilinear norm. Returns the smallest pivot norm encountered.
double orthogonalise_cluster(std::vector<ComplexVector>& vs) {
  double min_norm = 1.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t m = k; m < vs.size(); ++m) {
      const double nrm = std::abs(bilinear(vs[m], vs[m])) / vs[m].squaredNorm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = m;
      }
    }
    std::swap(vs[k], vs[best]);
    min_norm = std::min(min_norm, best_norm);
    const cd self = bilinear(vs[k], vs[k]);
    for (std::size_t m = k + 1; m < vs.size(); ++m) {
      vs[m] -= (bilinear(vs[k], vs[m]) / self) * vs[k];
      vs[m] /= vs[m].norm();
    }
  }
  return min_norm;
}

}  // namespace

EffectiveHamiltonian build_heff(const EmitterChain& chain, const PhaseModel& model,
                                bool include_loss, double delta_omega) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  ComplexMatrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Emitter& aj = chain[j];
    for (Eigen::Index l = 0; l < j; ++l) {
      const Emitter& al = chain[l];
      const cd v = cd(0.0, -0.5 * std::sqrt(aj.gamma1d * al.gamma1d)) *
                   spatial_phase(model, delta_omega, std::abs(aj.z - al.z));
      h(j, l) = v;
      h(l, j) = v;
    }
    const double decay = aj.gamma1d + (include_loss ? aj.gamma_ext : 0.0);
    h(j, j) = cd(aj.delta, -0.5 * decay);
  }
  return {std::move(h)};
}

const char* to_string(Radiance r) {
  switch (r) {
    case Radiance::Superradiant: return "superradiant";
    case Radiance::Subradiant: return "subradiant";
    case Radiance::Boundary: return "boundary";
  }
  return "boundary";
}

Radiance classify_radiance(cd lambda, double tol) {
  const double decay = -lambda.imag();
  if (decay > 0.5 + tol) return Radiance::Superradiant;
  if (decay < 0.5 - tol) return Radiance::Subradiant;
  return Radiance::Boundary;
}

ComplexVector incident_vector(const EmitterChain& chain, const PhaseModel& model,
                              double delta_omega) {
  ComplexVector a(static_cast<Eigen::Index>(chain.size()));
  for (std::size_t j = 0; j < chain.size(); ++j) {
    a(static_cast<Eigen::Index>(j)) =
        std::sqrt(chain[j].gamma1d) * spatial_phase(model, delta_omega, chain[j].z);
  }
  return a;
}

EigenmodeSet eigenmodes(const EffectiveHamiltonian& h, const ComplexVector& psi_in) {
  const Eigen::ComplexEigenSolver<ComplexMatrix> solver(h.h, true);
  if (solver.info() != Eigen::Success) throw ModalUnavailable("eigensolver did not converge");
  const auto n = h.h.rows();
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });

  const double scale = std::max(1.0, h.h.cwiseAbs().maxCoeff());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  EigenmodeSet set;
  set.modes.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    for (std::size_t m = i + 1; m < order.size(); ++m) {
      if (!used[m] && std::abs(values(order[m]) - values(order[i])) <= kClusterTol * scale) {
        members.push_back(m);
      }
    }
    std::vector<ComplexVector> vs;
    for (std::size_t m : members) {
      used[m] = true;
      vs.push_back(vectors.col(order[m]).normalized());
    }
    set.min_bilinear_norm = std::min(set.min_bilinear_norm, orthogonalise_cluster(vs));
    for (std::size_t c = 0; c < vs.size(); ++c) {
      Eigenmode mode;
      mode.lambda = values(order[members[c]]);
      mode.v = vs[c] / std::sqrt(bilinear(vs[c], vs[c]));
      mode.radiance = classify_radiance(mode.lambda);
      const cd proj = bilinear(psi_in, mode.v);
      mode.overlap = proj * proj;
      set.modes.push_back(std::move(mode));
    }
  }
  set.near_defective = set.min_bilinear_norm < kDefectiveNorm;
  return set;
}

ModalScatterer::ModalScatterer(EmitterChain chain, PhaseModel model)
    : chain_(std::move(chain)), model_(model) {
  if (model_.is_rigid()) {
    incident_ = incident_vector(chain_, model_, 0.0);
    modes_ = eigenmodes(build_heff(chain_, model_, true), incident_);
    if (modes_.near_defective) {
      throw ModalUnavailable("effective Hamiltonian is near an exceptional point");
    }
  }
}

Amplitudes ModalScatterer::evaluate(const EigenmodeSet& set, const ComplexVector& a,
                                    double delta_omega) const {
  const ComplexVector back = a.conjugate();
  cd r = 0.0;
  cd t_sum = 0.0;
  for (const Eigenmode& mode : set.modes) {
    const cd denom = delta_omega - mode.lambda;
    r += mode.overlap / denom;
    t_sum += bilinear(back, mode.v) * bilinear(mode.v, a) / denom;
  }
  const cd half_i(0.0, 0.5);
  return {-half_i * r, 1.0 - half_i * t_sum};
}

Amplitudes ModalScatterer::operator()(double delta_omega) const {
  if (model_.is_rigid()) return evaluate(modes_, incident_, delta_omega);
  const ComplexVector a = incident_vector(chain_, model_, delta_omega);
  const EigenmodeSet set = eigenmodes(build_heff(chain_, model_, true, delta_omega), a);
  if (set.near_defective) {
    throw ModalUnavailable("effective Hamiltonian is near an exceptional point");
  }
  return evaluate(set, a, delta_omega);
}

cd reflection_modal(const EmitterChain& chain, double delta_omega, const PhaseModel& model) {
  const ComplexVector a = incident_vector(chain, model, delta_omega);
  const EigenmodeSet set = eigenmodes(build_heff(chain, model, true, delta_omega), a);
  if (set.near_defective) {
    throw ModalUnavailable("effective Hamiltonian is near an exceptional point");
  }
  cd sum = 0.0;
  for (const Eigenmode& mode : set.modes) sum += mode.overlap / (delta_omega - mode.lambda);
  return cd(0.0, -0.5) * sum;
}

double dispersion(double kd, double Kd) {
  const double denom = std::cos(Kd) - std::cos(kd);
  if (std::abs(denom) < 1e-15) throw DispersionPole("cos(Kd) equals cos(kd): light-line crossing");
  return 0.5 * std::sin(kd) / denom;
}

GapReport bandgap(double kd) {
  const double s = std::sin(kd);
  if (std::abs(s) < kBraggFloor) throw BraggDivergence("band gap diverges at a Bragg phase");
  const double c = std::cos(kd);
  // Band edges at cos(Kd) = +1 and cos(Kd) = -1.
  const double at_zero = 0.5 * s / (1.0 - c);
  const double at_pi = 0.5 * s / (-1.0 - c);
  GapReport g;
  g.kd = kd;
  g.edge_upper = std::max(at_zero, at_pi);
  g.edge_lower = std::min(at_zero, at_pi);
  g.width = g.edge_upper - g.edge_lower;
  return g;
}

}  // namespace wgqed
