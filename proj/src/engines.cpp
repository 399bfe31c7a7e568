#include "wgqed/engines.hpp"

#include "wgqed/errors.hpp"
#include "wgqed/parallel.hpp"
#include "wgqed/scatter_classical.hpp"

namespace wgqed {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Exact: return "exact";
    case Engine::Modal: return "modal";
    case Engine::Recurrence: return "recurrence";
    case Engine::TransferMatrix: return "transfer-matrix";
  }
  return "exact";
}

std::optional<Engine> parse_engine(std::string_view name) {
  for (Engine e : kAllEngines) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

namespace {

TwoPortMatrix scaled_matching(const MirrorCoefficients& m, cd t) {
  return {t * t - m.r * m.r, m.r, -m.r, 1.0};
}

TwoPortMatrix power(TwoPortMatrix base, unsigned e) {
  TwoPortMatrix acc = TwoPortMatrix::identity();
  while (e) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return acc;
}

bool identical_atoms(const EmitterChain& chain) {
  const Emitter& a0 = chain[0];
  for (const auto& a : chain.atoms()) {
    if (a.delta != a0.delta || a.gamma1d != a0.gamma1d || a.gamma_ext != a0.gamma_ext) return false;
  }
  return true;
}

}  // namespace

Amplitudes periodic_transfer_rt(const Emitter& atom, int n, cd gap_phase, double delta_omega) {
  const MirrorCoefficients m = single_atom_rt(delta_omega - atom.delta, atom.gamma1d, atom.gamma_ext);
  const cd t = forward_transmission(m);
  const TwoPortMatrix s = scaled_matching(m, t);
  const TwoPortMatrix cell = s * TwoPortMatrix{gap_phase, 0.0, 0.0, 1.0 / gap_phase};
  const TwoPortMatrix product = power(cell, static_cast<unsigned>(n - 1)) * s;
  if (std::abs(product.m22) < 1e-300) {
    throw ResonantDivergence(delta_omega, "transfer matrix M22 vanishes");
  }
  cd t_scale = 1.0;
  cd base = t;
  for (unsigned e = static_cast<unsigned>(n); e; e >>= 1u) {
    if (e & 1u) t_scale *= base;
    base *= base;
  }
  return {product.m12 / product.m22, t_scale / product.m22};
}

Scatterer::Scatterer(const EmitterChain& chain, const PhaseModel& model, Engine engine)
    : chain_(chain), model_(model), engine_(engine) {
  if (engine_ == Engine::Modal) modal_.emplace(chain_, model_);
  if (engine_ == Engine::TransferMatrix && model_.is_rigid()) {
    for (std::size_t j = 1; j < chain_.size(); ++j) {
      gap_phases_.push_back(spatial_phase(model_, 0.0, chain_[j].z - chain_[j - 1].z));
    }
    origin_phase_ = spatial_phase(model_, 0.0, 2.0 * chain_[0].z);
    across_phase_ = spatial_phase(model_, 0.0, -chain_.length());
    periodic_ = chain_.size() > 1 && identical_atoms(chain_) && chain_.uniform_spacing(1e-12);
    if (periodic_) {
      const double spacing = chain_.length() / static_cast<double>(chain_.size() - 1);
      gap_phases_.assign(1, spatial_phase(model_, 0.0, spacing));
    }
  }
}

Amplitudes Scatterer::amplitudes(double delta_omega) const {
  switch (engine_) {
    case Engine::Exact: return scatter_exact(chain_, delta_omega, model_);
    case Engine::Modal: return (*modal_)(delta_omega);
    case Engine::Recurrence: return recurrence_rt(chain_, delta_omega, model_);
    case Engine::TransferMatrix: {
      if (!model_.is_rigid()) {
        const MirrorCoefficients m = transfer_matrix_rt(chain_, delta_omega, model_);
        return {m.r, m.t};
      }
      const cd to_origin = origin_phase_;
      const cd across = across_phase_;
      if (periodic_) {
        const Amplitudes a = periodic_transfer_rt(chain_[0], static_cast<int>(chain_.size()),
                                                  gap_phases_[0], delta_omega);
        return {a.r * to_origin, a.t * across};
      }
      TwoPortMatrix product = TwoPortMatrix::identity();
      cd t_scale = 1.0;
      for (std::size_t j = 0; j < chain_.size(); ++j) {
        if (j > 0) {
          const cd p = gap_phases_[j - 1];
          product = product * TwoPortMatrix{p, 0.0, 0.0, 1.0 / p};
        }
        const Emitter& a = chain_[j];
        const MirrorCoefficients m = single_atom_rt(delta_omega - a.delta, a.gamma1d, a.gamma_ext);
        const cd t = forward_transmission(m);
        product = product * scaled_matching(m, t);
        t_scale *= t;
      }
      if (std::abs(product.m22) < 1e-300) {
        throw ResonantDivergence(delta_omega, "transfer matrix M22 vanishes");
      }
      return {product.m12 / product.m22 * to_origin, t_scale / product.m22 * across};
    }
  }
  return scatter_exact(chain_, delta_omega, model_);
}

SweepResult sweep_collect(const EmitterChain& chain, const FrequencyGrid& grid,
                          const PhaseModel& model, Engine engine) {
  const Scatterer scatterer(chain, model, engine);
  std::vector<std::optional<ScatterPoint>> slots(grid.size());
  std::vector<std::optional<std::string>> errors(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      slots[i] = scatterer.point(grid[i]);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::vector<double> ok_grid;
  std::vector<ScatterPoint> points;
  std::vector<FrequencyFailure> failures;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slots[i]) {
      ok_grid.push_back(grid[i]);
      points.push_back(*slots[i]);
    } else {
      failures.push_back({i, grid[i], *errors[i]});
    }
  }
  return {Spectrum{FrequencyGrid(std::move(ok_grid)), std::move(points)}, std::move(failures)};
}

Spectrum sweep(const EmitterChain& chain, const FrequencyGrid& grid, const PhaseModel& model,
               Engine engine) {
  const Scatterer scatterer(chain, model, engine);
  std::vector<ScatterPoint> points(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { points[i] = scatterer.point(grid[i]); });
  return Spectrum{grid, std::move(points)};
}

}  // namespace wgqed
