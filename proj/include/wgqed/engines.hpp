#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgqed/core_model.hpp"
#include "wgqed/eigen_band.hpp"
#include "wgqed/scatter_exact.hpp"

namespace wgqed {

enum class Engine { Exact, Modal, Recurrence, TransferMatrix };

inline constexpr Engine kAllEngines[] = {Engine::Exact, Engine::Modal, Engine::Recurrence,
                                         Engine::TransferMatrix};

std::string_view to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

// Engine bound to one chain. The modal engine diagonalises on construction.
// With the rigid phase model the transfer-matrix engine caches the gap
// propagation phases; for identical, evenly spaced atoms the ensemble product
// is formed by repeated squaring.
class Scatterer {
 public:
  Scatterer(const EmitterChain& chain, const PhaseModel& model, Engine engine);

  Amplitudes amplitudes(double delta_omega) const;
  ScatterPoint point(double delta_omega) const {
    return ScatterPoint::from_amplitudes(delta_omega, amplitudes(delta_omega));
  }
  double reflectivity(double delta_omega) const { return std::norm(amplitudes(delta_omega).r); }

  const EmitterChain& chain() const { return chain_; }
  Engine engine() const { return engine_; }

 private:
  EmitterChain chain_;
  PhaseModel model_;
  Engine engine_;
  std::optional<ModalScatterer> modal_;
  std::vector<cd> gap_phases_;  // exp(i k0 d_j), rigid transfer matrix only
  cd origin_phase_{1.0};
  cd across_phase_{1.0};
  bool periodic_ = false;       // identical atoms at uniform spacing
};

// Transfer-matrix amplitudes of a periodic chain of n identical atoms with
// one-gap phase factor gap_phase, referenced to the first atom.
Amplitudes periodic_transfer_rt(const Emitter& atom, int n, cd gap_phase, double delta_omega);

struct FrequencyFailure {
  std::size_t index = 0;
  double delta_omega = 0.0;
  std::string message;
};

// Spectrum over the successfully evaluated frequencies plus the failures;
// a failing frequency never aborts the sweep.
struct SweepResult {
  Spectrum spectrum;
  std::vector<FrequencyFailure> failures;
};

SweepResult sweep_collect(const EmitterChain& chain, const FrequencyGrid& grid,
                          const PhaseModel& model, Engine engine);

// As sweep_collect, but rethrows the first failure.
Spectrum sweep(const EmitterChain& chain, const FrequencyGrid& grid, const PhaseModel& model,
               Engine engine);

}  // namespace wgqed
