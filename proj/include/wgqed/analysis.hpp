#pragma once

// Spectrum-level analytics: ultrahigh-reflection windows, reflection zeros,
// bandwidth sweeps, separation optimisation, modulation and loss studies.

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wgqed/core_model.hpp"
#include "wgqed/engines.hpp"

namespace wgqed {

struct FrequencyRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Range wide enough to hold every reflection feature of the chain: the
// infinite-chain gap (uniform spacing) or the collective linewidth, padded by
// the detuning spread.
FrequencyRange default_search_range(const EmitterChain& chain);

// Midpoint of the infinite-chain gap for a uniformly spaced chain away from
// the Bragg condition, scaled by the common gamma1d.
std::optional<double> band_center(const EmitterChain& chain);

struct WindowOptions {
  double threshold = 0.99;
  std::optional<FrequencyRange> search_range;
  double scan_step = 1e-3;
  double edge_tol = 1e-9;
  // Neighbouring above-threshold runs whose separating dip stays at or above
  // this reflectivity belong to the same window and count as dips.
  double merge_floor = 0.5;
  // Runs narrower than this are edge ripples and are never merged.
  double min_plateau_width = 0.05;
  Engine engine = Engine::TransferMatrix;
  bool parallel = true;
};

struct WindowReport {
  double threshold = 0.99;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  double min_r_inside = 1.0;
  int dip_count = 0;
};

// Window anchored at the band center when R there reaches the threshold,
// otherwise the widest above-threshold run. Edges are bisected to edge_tol.
// Throws NoWindow if R < threshold everywhere in range.
WindowReport extract_window(const EmitterChain& chain,
                            const PhaseModel& model = PhaseModel::rigid(),
                            const WindowOptions& options = {});

struct ZeroCrossing {
  double delta_omega = 0.0;
  double residual_r = 0.0;  // |r| at the refined minimum
  double phase_jump = 0.0;  // |arg r(w + h) - arg r(w - h)| wrapped to [0, pi]
};

// Minima of |r| below 1e-6 within range, refined by golden section.
std::vector<ZeroCrossing> find_zeros(const EmitterChain& chain,
                                     std::optional<FrequencyRange> range = std::nullopt,
                                     const PhaseModel& model = PhaseModel::rigid(),
                                     double scan_step = 1e-3,
                                     Engine engine = Engine::TransferMatrix);

struct HalfMaxWidth {
  double peak_omega = 0.0;
  double peak_R = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
};

// Full width at half maximum of the reflection peak with the largest R.
HalfMaxWidth half_max_width(const EmitterChain& chain,
                            const PhaseModel& model = PhaseModel::rigid(),
                            std::optional<FrequencyRange> range = std::nullopt,
                            double scan_step = 1e-3, Engine engine = Engine::Exact);

struct BandwidthRow {
  int n = 0;
  double width = 0.0;
};

std::vector<BandwidthRow> bandwidth_vs_n(double d, std::span<const int> ns,
                                         double threshold = 0.99,
                                         const PhaseModel& model = PhaseModel::rigid());

struct OptimizeOptions {
  double threshold = 0.99;
  double d_lo = 0.001;
  double d_hi = 0.25;  // d and 0.5 - d give identical window widths
  int grid_points = 200;  // log-spaced
  double d_tol = 1e-5;
  double scan_step = 1e-3;
};

struct OptimizationResult {
  int n = 0;
  double d_star = 0.0;
  double width_star = 0.0;
  int evaluations = 0;
};

// Window width of a uniform chain at separation d; 0 when no window exists.
double window_width_at(int n, double d, double threshold, const PhaseModel& model,
                       double scan_step = 1e-3, bool parallel = false);

// Coarse scan over d followed by golden-section refinement of the best
// bracket. Separations with sin(k_0 d) < 1e-6 are never probed.
OptimizationResult optimize_separation(int n, const OptimizeOptions& options = {},
                                       const PhaseModel& model = PhaseModel::rigid());

struct ModulationRow {
  double delta_step = 0.0;
  WindowReport window;
};

std::vector<ModulationRow> modulation_study(int n, double d, std::span<const double> deltas,
                                            double threshold = 0.99,
                                            const PhaseModel& model = PhaseModel::rigid());

struct DissipationRow {
  std::size_t scenario = 0;
  ChainSpec spec;
  double gamma_ext = 0.0;
  WindowReport reference;  // lossless window
  double min_R = 0.0;      // minimum R over the reference window with loss
};

std::vector<DissipationRow> dissipation_study(std::span<const ChainSpec> scenarios,
                                              std::span<const double> gammas,
                                              double threshold = 0.99,
                                              const PhaseModel& model = PhaseModel::rigid());

// Minimum of R over [range.lo, range.hi]: scan plus golden-section polish.
double min_reflectivity(const Scatterer& scatterer, FrequencyRange range, double scan_step = 1e-3);

// Maximiser of a unimodal f on [a, b] to tolerance tol.
double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol);

}  // namespace wgqed
