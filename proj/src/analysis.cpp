#include "wgqed/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "wgqed/eigen_band.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/parallel.hpp"

namespace wgqed {

namespace {

constexpr double kBraggSine = 1e-6;
constexpr double kNudge = 1e-9;
constexpr double kRangeCap = 1e4;
constexpr double kZeroResidual = 1e-6;
constexpr double kZeroCandidate = 0.2;

double mean_gamma1d(const EmitterChain& chain) {
  double s = 0.0;
  for (const auto& a : chain.atoms()) s += a.gamma1d;
  return s / static_cast<double>(chain.size());
}

// Probes that land on an isolated numerical singularity are nudged once.
Amplitudes robust_amplitudes(const Scatterer& s, double w) {
  try {
    return s.amplitudes(w);
  } catch (const FrequencyError&) {
    return s.amplitudes(w + kNudge);
  }
}

double robust_R(const Scatterer& s, double w) { return std::norm(robust_amplitudes(s, w).r); }

struct Scan {
  std::vector<double> w;
  std::vector<double> value;
};

std::vector<double> scan_points(FrequencyRange range, double step) {
  if (!(range.hi > range.lo)) throw InvalidParameter("search_range", "max must exceed min");
  if (!(step > 0.0)) throw InvalidParameter("scan_step", "must be positive");
  const auto count = static_cast<std::size_t>(std::ceil((range.hi - range.lo) / step)) + 1;
  const FrequencyGrid grid = FrequencyGrid::linspace(range.lo, range.hi, count);
  return {grid.values().begin(), grid.values().end()};
}

template <class F>
Scan scan(FrequencyRange range, double step, bool parallel, F&& f) {
  Scan out;
  out.w = scan_points(range, step);
  out.value.resize(out.w.size());
  if (parallel) {
    parallel_for(out.w.size(), [&](std::size_t i) { out.value[i] = f(out.w[i]); });
  } else {
    for (std::size_t i = 0; i < out.w.size(); ++i) out.value[i] = f(out.w[i]);
  }
  return out;
}

// Shrinks [inside, outside] around the threshold crossing, returning the
// inside end (R >= threshold there).
double bisect_edge(const Scatterer& s, double threshold, double inside, double outside,
                   double tol) {
  while (std::abs(outside - inside) > tol) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (robust_R(s, mid) >= threshold) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  return golden_section_maximize([&](double x) { return -f(x); }, a, b, tol);
}

}  // namespace

double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (a > b) std::swap(a, b);
  double best_x = a;
  double best_f = f(a);
  auto track = [&](double x, double v) {
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  };
  {
    const double fb = f(b);
    track(b, fb);
  }
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  track(c, fc);
  track(d, fd);
  while (std::abs(b - a) > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      if (c == d) break;
      fc = f(c);
      track(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      if (c == d) break;
      fd = f(d);
      track(d, fd);
    }
  }
  return best_x;
}

std::optional<double> band_center(const EmitterChain& chain) {
  const auto d = chain.uniform_spacing();
  if (!d) return std::nullopt;
  const double kd = kTwoPi * *d;
  if (std::abs(std::sin(kd)) < kBraggSine) return std::nullopt;
  return mean_gamma1d(chain) * bandgap(kd).center();
}

FrequencyRange default_search_range(const EmitterChain& chain) {
  const double g = mean_gamma1d(chain);
  const double spread = chain.detuning_spread();
  FrequencyRange range;
  const auto d = chain.uniform_spacing();
  if (d && std::abs(std::sin(kTwoPi * *d)) >= kBraggSine) {
    const GapReport gap = bandgap(kTwoPi * *d);
    range = {g * gap.edge_lower - 2.0 * g - spread, g * gap.edge_upper + 2.0 * g + spread};
  } else {
    const double half = 0.5 * g * static_cast<double>(chain.size()) + 2.0 * g + spread;
    range = {-half, half};
  }
  range.lo = std::max(range.lo, -kRangeCap);
  range.hi = std::min(range.hi, kRangeCap);
  return range;
}

WindowReport extract_window(const EmitterChain& chain, const PhaseModel& model,
                            const WindowOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold < 1.0)) {
    throw InvalidParameter("threshold", "must lie in (0, 1)");
  }
  const FrequencyRange range = options.search_range.value_or(default_search_range(chain));
  const Scatterer s(chain, model, options.engine);
  const Scan sc = scan(range, options.scan_step, options.parallel,
                       [&](double w) { return robust_R(s, w); });
  const std::size_t n = sc.w.size();

  // Maximal index runs with R >= threshold.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    if (sc.value[i] >= options.threshold) {
      std::size_t j = i;
      while (j + 1 < n && sc.value[j + 1] >= options.threshold) ++j;
      runs.emplace_back(i, j);
      i = j + 1;
    } else {
      ++i;
    }
  }
  if (runs.empty()) throw NoWindow("reflectivity never reaches the threshold in range");

  std::optional<std::size_t> chosen;
  if (const auto center = band_center(chain)) {
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (sc.w[runs[k].first] <= *center && *center <= sc.w[runs[k].second]) chosen = k;
    }
  }
  if (!chosen) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) {
      if (runs[k].second - runs[k].first > runs[best].second - runs[best].first) best = k;
    }
    chosen = best;
  }

  auto gap_min = [&](std::size_t left_run, std::size_t right_run) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = runs[left_run].second + 1; i < runs[right_run].first; ++i) {
      m = std::min(m, sc.value[i]);
    }
    return m;
  };
  auto plateau = [&](std::size_t k) {
    return sc.w[runs[k].second] - sc.w[runs[k].first] >= options.min_plateau_width;
  };
  std::size_t first = *chosen;
  std::size_t last = *chosen;
  while (first > 0 && plateau(first - 1) && gap_min(first - 1, first) >= options.merge_floor) {
    --first;
  }
  while (last + 1 < runs.size() && plateau(last + 1) &&
         gap_min(last, last + 1) >= options.merge_floor) {
    ++last;
  }

  const std::size_t start = runs[first].first;
  const std::size_t end = runs[last].second;
  WindowReport rep;
  rep.threshold = options.threshold;
  rep.lo = start == 0 ? sc.w[0]
                      : bisect_edge(s, options.threshold, sc.w[start], sc.w[start - 1],
                                    options.edge_tol);
  rep.hi = end + 1 == n ? sc.w[n - 1]
                        : bisect_edge(s, options.threshold, sc.w[end], sc.w[end + 1],
                                      options.edge_tol);
  rep.width = rep.hi - rep.lo;
  rep.dip_count = static_cast<int>(last - first);
  rep.min_r_inside = std::min(robust_R(s, rep.lo), robust_R(s, rep.hi));
  for (std::size_t i = start; i <= end; ++i) rep.min_r_inside = std::min(rep.min_r_inside, sc.value[i]);
  return rep;
}

std::vector<ZeroCrossing> find_zeros(const EmitterChain& chain, std::optional<FrequencyRange> range,
                                     const PhaseModel& model, double scan_step, Engine engine) {
  const FrequencyRange r = range.value_or(default_search_range(chain));
  const Scatterer s(chain, model, engine);
  auto mag = [&](double w) { return std::abs(robust_amplitudes(s, w).r); };
  const Scan sc = scan(r, scan_step, true, mag);

  std::vector<ZeroCrossing> zeros;
  for (std::size_t i = 1; i + 1 < sc.w.size(); ++i) {
    const double a = sc.value[i];
    if (!(a <= sc.value[i - 1] && a < sc.value[i + 1] && a < kZeroCandidate)) continue;
    const double x = golden_section_minimize(mag, sc.w[i - 1], sc.w[i + 1], 1e-15);
    const double residual = mag(x);
    if (residual >= kZeroResidual) continue;
    if (!zeros.empty() && std::abs(zeros.back().delta_omega - x) < scan_step) continue;
    const double h = 1e-6;
    const double jump =
        std::abs(std::remainder(std::arg(robust_amplitudes(s, x + h).r) -
                                    std::arg(robust_amplitudes(s, x - h).r),
                                kTwoPi));
    zeros.push_back({x, residual, jump});
  }
  return zeros;
}

HalfMaxWidth half_max_width(const EmitterChain& chain, const PhaseModel& model,
                            std::optional<FrequencyRange> range, double scan_step, Engine engine) {
  const FrequencyRange r = range.value_or(default_search_range(chain));
  const Scatterer s(chain, model, engine);
  auto R = [&](double w) { return robust_R(s, w); };
  const Scan sc = scan(r, scan_step, true, R);
  const auto peak_it = std::max_element(sc.value.begin(), sc.value.end());
  const auto ip = static_cast<std::size_t>(peak_it - sc.value.begin());

  HalfMaxWidth out;
  out.peak_omega = ip == 0 || ip + 1 == sc.w.size()
                       ? sc.w[ip]
                       : golden_section_maximize(R, sc.w[ip - 1], sc.w[ip + 1], 1e-12);
  out.peak_R = R(out.peak_omega);
  const double half = 0.5 * out.peak_R;
  auto edge = [&](double inside, double outside) {
    while (std::abs(outside - inside) > 1e-12) {
      const double mid = 0.5 * (inside + outside);
      if (R(mid) >= half) inside = mid; else outside = mid;
    }
    return 0.5 * (inside + outside);
  };
  std::size_t i = ip;
  while (i > 0 && sc.value[i - 1] >= half) --i;
  out.lo = i == 0 ? sc.w[0] : edge(sc.w[i], sc.w[i - 1]);
  std::size_t j = ip;
  while (j + 1 < sc.w.size() && sc.value[j + 1] >= half) ++j;
  out.hi = j + 1 == sc.w.size() ? sc.w.back() : edge(sc.w[j], sc.w[j + 1]);
  out.width = out.hi - out.lo;
  return out;
}

double window_width_at(int n, double d, double threshold, const PhaseModel& model,
                       double scan_step, bool parallel) {
  WindowOptions opts;
  opts.threshold = threshold;
  opts.scan_step = scan_step;
  opts.parallel = parallel;
  try {
    return extract_window(build_uniform_chain(n, d), model, opts).width;
  } catch (const NoWindow&) {
    return 0.0;
  }
}

std::vector<BandwidthRow> bandwidth_vs_n(double d, std::span<const int> ns, double threshold,
                                         const PhaseModel& model) {
  std::vector<BandwidthRow> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    WindowOptions opts;
    opts.threshold = threshold;
    opts.parallel = false;
    rows[i] = {ns[i], extract_window(build_uniform_chain(ns[i], d), model, opts).width};
  });
  return rows;
}

OptimizationResult optimize_separation(int n, const OptimizeOptions& options,
                                       const PhaseModel& model) {
  if (n < 2) throw InvalidParameter("n", "separation optimisation needs at least two atoms");
  if (!(options.d_lo > 0.0 && options.d_hi > options.d_lo)) {
    throw InvalidParameter("d_range", "need 0 < d_lo < d_hi");
  }
  if (options.grid_points < 2) throw InvalidParameter("grid_points", "need at least two points");

  std::vector<double> ds;
  const double ratio = std::log(options.d_hi / options.d_lo);
  for (int i = 0; i < options.grid_points; ++i) {
    const double d = options.d_lo * std::exp(ratio * i / (options.grid_points - 1));
    if (std::abs(std::sin(kTwoPi * d)) >= kBraggSine) ds.push_back(d);
  }
  std::atomic<int> evaluations{0};
  auto width = [&](double d) {
    ++evaluations;
    if (std::abs(std::sin(kTwoPi * d)) < kBraggSine) return 0.0;
    return window_width_at(n, d, options.threshold, model, options.scan_step, false);
  };
  std::vector<double> widths(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) { widths[i] = width(ds[i]); });

  const auto best_it = std::max_element(widths.begin(), widths.end());
  const auto ib = static_cast<std::size_t>(best_it - widths.begin());
  OptimizationResult res;
  res.n = n;
  res.d_star = ds[ib];
  res.width_star = *best_it;

  const double a = ib == 0 ? options.d_lo : ds[ib - 1];
  const double b = ib + 1 == ds.size() ? options.d_hi : ds[ib + 1];
  const double refined_d = golden_section_maximize(width, a, b, options.d_tol);
  const double w = width(refined_d);
  if (w > res.width_star) {
    res.width_star = w;
    res.d_star = refined_d;
  }
  res.evaluations = evaluations.load();
  return res;
}

std::vector<ModulationRow> modulation_study(int n, double d, std::span<const double> deltas,
                                            double threshold, const PhaseModel& model) {
  std::vector<ModulationRow> rows(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    WindowOptions opts;
    opts.threshold = threshold;
    opts.parallel = false;
    rows[i] = {deltas[i], extract_window(build_modulated_chain(n, d, deltas[i]), model, opts)};
  });
  return rows;
}

double min_reflectivity(const Scatterer& scatterer, FrequencyRange range, double scan_step) {
  auto R = [&](double w) { return robust_R(scatterer, w); };
  if (!(range.hi > range.lo)) return R(range.lo);
  const Scan sc = scan(range, scan_step, false, R);
  const auto it = std::min_element(sc.value.begin(), sc.value.end());
  const auto i = static_cast<std::size_t>(it - sc.value.begin());
  const double a = sc.w[i == 0 ? 0 : i - 1];
  const double b = sc.w[i + 1 == sc.w.size() ? i : i + 1];
  if (b > a) {
    const double x = golden_section_minimize(R, a, b, 1e-12);
    return std::min(*it, R(x));
  }
  return *it;
}

std::vector<DissipationRow> dissipation_study(std::span<const ChainSpec> scenarios,
                                              std::span<const double> gammas, double threshold,
                                              const PhaseModel& model) {
  std::vector<WindowReport> reference(scenarios.size());
  parallel_for(scenarios.size(), [&](std::size_t i) {
    WindowOptions opts;
    opts.threshold = threshold;
    opts.parallel = false;
    reference[i] = extract_window(scenarios[i].build(0.0), model, opts);
  });
  std::vector<DissipationRow> rows(scenarios.size() * gammas.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const std::size_t i = k / gammas.size();
    const double gamma = gammas[k % gammas.size()];
    const Scatterer s(scenarios[i].build(gamma), model, Engine::TransferMatrix);
    rows[k] = {i, scenarios[i], gamma, reference[i],
               min_reflectivity(s, {reference[i].lo, reference[i].hi})};
  });
  return rows;
}

}  // namespace wgqed
