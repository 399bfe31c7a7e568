#include "wgqed/scatter_exact.hpp"

#include <cmath>
#include <limits>

#include "wgqed/errors.hpp"
#include "wgqed/parallel.hpp"

namespace wgqed {

ScatterPoint ScatterPoint::from_amplitudes(double delta_omega, Amplitudes a) {
  ScatterPoint p;
  p.delta_omega = delta_omega;
  p.r = a.r;
  p.t = a.t;
  p.R = std::norm(a.r);
  p.T = std::norm(a.t);
  p.phase = std::arg(a.r);
  if (p.phase == -kPi) p.phase = kPi;
  p.loss = 1.0 - p.R - p.T;
  return p;
}

ComplexMatrix build_m_matrix(const EmitterChain& chain, double delta_omega,
                             const PhaseModel& model) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Emitter& aj = chain[j];
    for (Eigen::Index l = 0; l < j; ++l) {
      const Emitter& al = chain[l];
      const cd v = 0.5 * std::sqrt(aj.gamma1d * al.gamma1d) *
                   spatial_phase(model, delta_omega, std::abs(aj.z - al.z));
      m(j, l) = v;
      m(l, j) = v;
    }
    m(j, j) = cd(0.5 * aj.gamma1d + 0.5 * aj.gamma_ext, -(delta_omega - aj.delta));
  }
  return m;
}

Amplitudes scatter_exact(const EmitterChain& chain, double delta_omega,
                         const PhaseModel& model) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  const ComplexMatrix m = build_m_matrix(chain, delta_omega, model);
  ComplexVector a(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j) = std::sqrt(chain[j].gamma1d) * spatial_phase(model, delta_omega, chain[j].z);
  }
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw SingularMatrix(delta_omega, "coupling matrix is singular");
  }
  const ComplexVector x = lu.solve(a);
  const cd r = -0.5 * a.cwiseProduct(x).sum();
  const cd t = 1.0 - 0.5 * a.dot(x);  // dot conjugates a
  return {r, t};
}

cd reflection_exact(const EmitterChain& chain, double delta_omega, const PhaseModel& model) {
  return scatter_exact(chain, delta_omega, model).r;
}

cd transmission_exact(const EmitterChain& chain, double delta_omega, const PhaseModel& model) {
  return scatter_exact(chain, delta_omega, model).t;
}

Spectrum sweep_spectrum(const EmitterChain& chain, const FrequencyGrid& grid,
                        const PhaseModel& model) {
  std::vector<ScatterPoint> points(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    points[i] = ScatterPoint::from_amplitudes(grid[i], scatter_exact(chain, grid[i], model));
  });
  return Spectrum{grid, std::move(points)};
}

}  // namespace wgqed
