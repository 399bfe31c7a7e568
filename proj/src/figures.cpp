#include "wgqed/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "wgqed/analysis.hpp"
#include "wgqed/csv_io.hpp"
#include "wgqed/eigen_band.hpp"
#include "wgqed/engines.hpp"
#include "wgqed/parallel.hpp"

namespace wgqed {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Panel {
 public:
  Panel(std::string id, fs::path dir) : dir_(std::move(dir)) { out_.id = std::move(id); }

  json& params() { return params_; }
  json& summary() { return summary_; }

  void csv(const std::string& suffix, std::string content) {
    const fs::path file = dir_ / (out_.id + "_" + suffix + ".csv");
    files_.push_back(file.filename().string());
    out_.files.push_back({file, std::move(content)});
  }

  void check(std::string name, double value, double lo, double hi) {
    out_.checks.push_back({std::move(name), value, lo, hi, value >= lo && value <= hi});
  }
  void check_true(std::string name, bool ok) { check(std::move(name), ok ? 1.0 : 0.0, 1.0, 1.0); }

  // Spectrum CSV of one engine; returns the evaluated points.
  std::vector<ScatterPoint> spectrum(const std::string& suffix, const EmitterChain& chain,
                                     const GridSpec& grid, Engine engine = Engine::Exact) {
    SweepResult res = sweep_collect(chain, grid.build(), PhaseModel::rigid(), engine);
    csv(suffix, spectrum_csv(res.spectrum));
    if (!res.failures.empty()) {
      summary_["failed_points"][suffix] = res.failures.size();
    }
    return std::move(res.spectrum.points);
  }

  FigureOutput finish(std::string description) {
    json checks = json::array();
    for (const auto& c : out_.checks) {
      checks.push_back(
          {{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass}});
    }
    json& env = out_.envelope;
    env["figure"] = out_.id;
    env["description"] = std::move(description);
    env["parameters"] = params_;
    env["summary"] = summary_;
    env["checks"] = std::move(checks);
    env["files"] = files_;
    env["provenance"] = provenance(hash_hex(params_.dump()));
    out_.files.push_back({dir_ / (out_.id + ".json"), env.dump(2) + "\n"});
    return std::move(out_);
  }

 private:
  static std::string hash_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  fs::path dir_;
  FigureOutput out_;
  json params_ = json::object();
  json summary_ = json::object();
  json files_ = json::array();
};

json grid_json(const GridSpec& g) { return {g.min, g.max, g.count}; }

double max_dr(const std::vector<ScatterPoint>& a, const std::vector<ScatterPoint>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].delta_omega == b[i].delta_omega) m = std::max(m, std::abs(a[i].r - b[i].r));
  }
  return m;
}

std::optional<WindowReport> try_window(const EmitterChain& chain, bool parallel = true) {
  WindowOptions opts;
  opts.parallel = parallel;
  try {
    return extract_window(chain, PhaseModel::rigid(), opts);
  } catch (const NoWindow&) {
    return std::nullopt;
  }
}

std::vector<double> window_row(double key, const std::optional<WindowReport>& w) {
  if (!w) return {key, kNaN, kNaN, 0.0, kNaN, 0.0};
  return {key, w->lo, w->hi, w->width, w->min_r_inside, static_cast<double>(w->dip_count)};
}

const std::vector<std::string> kWindowHeader = {"key", "lo", "hi", "width", "min_r_inside",
                                                "dip_count"};

std::vector<std::string> with_key(std::string key) {
  auto h = kWindowHeader;
  h[0] = std::move(key);
  return h;
}

EigenmodeSet modes_of(const EmitterChain& chain) {
  const PhaseModel rigid = PhaseModel::rigid();
  return eigenmodes(build_heff(chain, rigid), incident_vector(chain, rigid, 0.0));
}

std::string eigen_table(const EigenmodeSet& set) {
  std::vector<std::vector<double>> rows;
  for (const auto& m : set.modes) {
    rows.push_back({m.lambda.real(), m.lambda.imag(), std::abs(m.overlap)});
  }
  return table_csv({"re_lambda", "im_lambda", "abs_overlap"}, rows);
}

// Separations swept in the d-resolved panels, avoiding the Bragg point.
std::vector<double> separation_sweep() {
  std::vector<double> ds;
  for (int i = 1; i <= 99; ++i) ds.push_back(0.005 * i);
  return ds;
}

FigureOutput fig2a(Panel p) {
  const GridSpec grid{-5.0, 5.0, 1001};
  const EmitterChain chain = build_uniform_chain(1, 0.25);
  p.params() = {{"n", 1}, {"gamma_ext", 0.0}, {"grid", grid_json(grid)}};
  const auto exact = p.spectrum("exact", chain, grid);
  const auto tm = p.spectrum("transfer_matrix", chain, grid, Engine::TransferMatrix);

  const Scatterer s(chain, PhaseModel::rigid(), Engine::Exact);
  const ScatterPoint at0 = s.point(0.0);
  double unwrapped = 0.0;
  for (std::size_t i = 1; i < exact.size(); ++i) {
    double step = exact[i].phase - exact[i - 1].phase;
    step -= kTwoPi * std::round(step / kTwoPi);
    unwrapped += step;
  }
  p.summary() = {{"R_at_resonance", at0.R},
                 {"phase_at_resonance", at0.phase},
                 {"phase_swing", std::abs(unwrapped)},
                 {"max_abs_dr_transfer_matrix", max_dr(exact, tm)}};
  p.check("R(0)", at0.R, 1.0 - 1e-12, 1.0 + 1e-12);
  p.check("phase(0) mod 2pi", std::abs(std::remainder(at0.phase - kPi, kTwoPi)), 0.0, 1e-9);
  p.check("R(+0.5)", s.reflectivity(0.5), 0.5 - 1e-10, 0.5 + 1e-10);
  p.check("R(-0.5)", s.reflectivity(-0.5), 0.5 - 1e-10, 0.5 + 1e-10);
  p.check("phase swing across the line / pi", std::abs(unwrapped) / kPi, 0.9, 1.0);
  return p.finish("single atom reflection spectrum and phase");
}

FigureOutput fig2b(Panel p) {
  const GridSpec grid{-15.0, 15.0, 1201};
  const EmitterChain chain = build_uniform_chain(5, 0.5);
  p.params() = {{"n", 5}, {"d", 0.5}, {"gamma_ext", 0.0}, {"grid", grid_json(grid)}};
  const auto exact = p.spectrum("exact", chain, grid);
  const auto tm = p.spectrum("transfer_matrix", chain, grid, Engine::TransferMatrix);
  const HalfMaxWidth fwhm = half_max_width(chain);
  const EigenmodeSet set = modes_of(chain);
  int superradiant = 0;
  for (const auto& m : set.modes) {
    if (std::abs(-m.lambda.imag() - 2.5) < 1e-8) ++superradiant;
  }
  p.csv("eigen", eigen_table(set));
  p.summary() = {{"fwhm", fwhm.width},
                 {"modes_with_decay_2.5", superradiant},
                 {"max_abs_dr_transfer_matrix", max_dr(exact, tm)}};
  p.check("FWHM", fwhm.width, 5.0 * 0.99, 5.0 * 1.01);
  p.check("eigenvalues with decay 2.5", superradiant, 1.0, 1.0);
  return p.finish("Bragg-spaced five-atom chain: one superradiant channel");
}

FigureOutput anti_bragg_spectrum(Panel p, int n, std::string description) {
  const GridSpec grid{-5.0, 5.0, 1001};
  const EmitterChain chain = build_uniform_chain(n, 0.25);
  p.params() = {{"n", n}, {"d", 0.25}, {"gamma_ext", 0.0}, {"grid", grid_json(grid)}};
  const auto exact = p.spectrum("exact", chain, grid);
  const auto tm = p.spectrum("transfer_matrix", chain, grid, Engine::TransferMatrix);
  const auto zeros = find_zeros(chain);
  json zj = json::array();
  for (const auto& z : zeros) zj.push_back(report_json(z));
  const auto window = try_window(chain);
  p.summary() = {{"zeros", std::move(zj)},
                 {"zero_count", zeros.size()},
                 {"window", window ? report_json(*window) : json(nullptr)},
                 {"max_abs_dr_transfer_matrix", max_dr(exact, tm)}};
  p.check("max |r_exact - r_TM|", max_dr(exact, tm), 0.0, 1e-9);
  if (n == 5) {
    p.check("zero count", static_cast<double>(zeros.size()), 4.0, 4.0);
    bool all_pi = true;
    for (const auto& z : zeros) all_pi = all_pi && std::abs(z.phase_jump - kPi) < 0.1;
    p.check_true("every zero carries a pi phase jump", all_pi);
  }
  return p.finish(std::move(description));
}

FigureOutput fig2c(Panel p) {
  return anti_bragg_spectrum(std::move(p), 2, "two atoms at quarter-wavelength spacing");
}

FigureOutput fig2d(Panel p) {
  return anti_bragg_spectrum(std::move(p), 5, "five atoms at quarter-wavelength spacing");
}

FigureOutput fig3a(Panel p) {
  const int n = 20;
  const GridSpec grid{-10.0, 10.0, 401};
  const auto ds = separation_sweep();
  p.params() = {{"n", n}, {"d", ds}, {"gamma_ext", 0.0}, {"grid", grid_json(grid)}};
  const FrequencyGrid g = grid.build();

  std::vector<std::vector<double>> map_rows(ds.size() * g.size());
  std::vector<std::optional<WindowReport>> windows(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    const EmitterChain chain = build_uniform_chain(n, ds[i]);
    const Scatterer s(chain, PhaseModel::rigid(), Engine::TransferMatrix);
    for (std::size_t k = 0; k < g.size(); ++k) {
      map_rows[i * g.size() + k] = {ds[i], g[k], s.reflectivity(g[k])};
    }
    windows[i] = try_window(chain, false);
  });
  p.csv("map", table_csv({"d", "delta_omega", "R"}, map_rows));

  std::vector<std::vector<double>> rows;
  double gap_mismatch_quarter = kNaN;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto row = window_row(ds[i], windows[i]);
    const GapReport gap = bandgap(kTwoPi * ds[i]);
    row.push_back(gap.edge_lower);
    row.push_back(gap.edge_upper);
    rows.push_back(std::move(row));
    if (std::abs(ds[i] - 0.25) < 1e-12 && windows[i]) {
      gap_mismatch_quarter = std::abs(windows[i]->width - gap.width);
    }
  }
  auto header = with_key("d");
  header.push_back("gap_lower");
  header.push_back("gap_upper");
  p.csv("windows", table_csv(header, rows));
  p.summary() = {{"window_minus_gap_at_quarter_wave", gap_mismatch_quarter}};
  p.check("|window - gap| at d = 0.25", gap_mismatch_quarter, 0.0, 0.05);
  return p.finish("reflection map versus separation with windows and infinite-chain gap");
}

FigureOutput fig3b(Panel p) {
  const int n = 20;
  const auto ds = separation_sweep();
  p.params() = {{"n", n}, {"d", ds}, {"gamma_ext", 0.0}};
  std::vector<EigenmodeSet> sets(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) { sets[i] = modes_of(build_uniform_chain(n, ds[i])); });
  std::vector<std::vector<double>> rows;
  double worst_trace = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    cd sum = 0.0;
    for (std::size_t k = 0; k < sets[i].modes.size(); ++k) {
      const cd l = sets[i].modes[k].lambda;
      sum += l;
      rows.push_back({ds[i], static_cast<double>(k), l.real(), l.imag()});
    }
    worst_trace = std::max(worst_trace, std::abs(sum - cd(0.0, -0.5 * n)));
  }
  p.csv("eigenvalues", table_csv({"d", "index", "re_lambda", "im_lambda"}, rows));
  p.summary() = {{"max_trace_deviation", worst_trace}};
  p.check("|sum lambda - trace H|", worst_trace, 0.0, 1e-10);
  return p.finish("effective-Hamiltonian eigenvalues versus separation");
}

FigureOutput eigen_vs_spectrum(Panel p, double d, GridSpec grid) {
  const int n = 20;
  const EmitterChain chain = build_uniform_chain(n, d);
  p.params() = {{"n", n}, {"d", d}, {"gamma_ext", 0.0}, {"grid", grid_json(grid)}};
  p.spectrum("exact", chain, grid);
  const EigenmodeSet set = modes_of(chain);
  p.csv("eigen", eigen_table(set));
  const auto window = try_window(chain);
  int inside = 0;
  if (window) {
    for (const auto& m : set.modes) {
      if (m.lambda.real() > window->lo && m.lambda.real() < window->hi) ++inside;
    }
  }
  const GapReport gap = bandgap(kTwoPi * d);
  double in_gap = 0.0;
  if (window && window->width > 0.0) {
    const double overlap = std::min(window->hi, gap.edge_upper) - std::max(window->lo, gap.edge_lower);
    in_gap = std::max(0.0, overlap) / window->width;
  }
  p.summary() = {{"window", window ? report_json(*window) : json(nullptr)},
                 {"gap", report_json(gap)},
                 {"eigenvalues_inside_window", inside},
                 {"window_fraction_inside_gap", in_gap}};
  p.check_true("window exists", window.has_value());
  p.check("fraction of the window inside the infinite-chain gap", in_gap, 0.95, 1.0);
  return p.finish("eigenvalues against the reflection spectrum");
}

FigureOutput fig3c(Panel p) { return eigen_vs_spectrum(std::move(p), 0.25, {-3.0, 3.0, 1201}); }
FigureOutput fig3d(Panel p) { return eigen_vs_spectrum(std::move(p), 0.024, {-5.0, 10.0, 3001}); }

FigureOutput fig3e(Panel p) {
  const double kd = 0.5 * kPi;
  const std::size_t count = 400;
  p.params() = {{"kd", kd}, {"Kd_points", count}};
  std::vector<std::vector<double>> rows;
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    // Midpoints avoid the light-line poles at Kd = +-kd.
    const double Kd = -kPi + kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    try {
      const double w = dispersion(kd, Kd);
      rows.push_back({Kd, w});
      closest = std::min(closest, std::abs(w));
    } catch (const DispersionPole&) {
    }
  }
  p.csv("dispersion", table_csv({"Kd", "omega"}, rows));
  const GapReport gap = bandgap(kd);
  p.summary() = {{"gap", report_json(gap)}, {"min_abs_band_frequency", closest}};
  p.check("gap width at kd = pi/2", gap.width, 1.0 - 1e-12, 1.0 + 1e-12);
  p.check("no band state inside the gap", closest, 0.5 - 1e-12, 1e300);
  return p.finish("infinite-chain dispersion at quarter-wavelength spacing");
}

FigureOutput fig3f(Panel p) {
  std::vector<double> ds = separation_sweep();
  ds.push_back(0.024);
  std::sort(ds.begin(), ds.end());
  p.params() = {{"d", ds}};
  std::vector<std::vector<double>> rows;
  for (double d : ds) {
    const GapReport g = bandgap(kTwoPi * d);
    rows.push_back({kTwoPi * d, d, g.edge_lower, g.edge_upper, g.width});
  }
  p.csv("bandgap", table_csv({"kd", "d", "edge_lower", "edge_upper", "width"}, rows));
  const double w024 = bandgap(kTwoPi * 0.024).width;
  const double w025 = bandgap(0.5 * kPi).width;
  p.summary() = {{"width_at_d_0.024", w024}, {"width_at_kd_pi_over_2", w025}};
  p.check("gap width at d = 0.024", w024, 6.65, 6.67);
  p.check("gap width at kd = pi/2", w025, 1.0 - 1e-12, 1.0 + 1e-12);
  return p.finish("band-gap width versus kd");
}

FigureOutput fig4a(Panel p) {
  std::vector<int> ns;
  for (int n = 1; n <= 60; ++n) ns.push_back(n);
  p.params() = {{"d", 0.25}, {"n", ns}, {"threshold", 0.99}};
  const auto rows = bandwidth_vs_n(0.25, ns);
  std::vector<std::vector<double>> table;
  std::map<int, double> width;
  for (const auto& r : rows) {
    table.push_back({static_cast<double>(r.n), r.width});
    width[r.n] = r.width;
  }
  p.csv("bandwidth", table_csv({"n", "width"}, table));
  p.summary() = {{"width_n1", width[1]}, {"width_n5", width[5]}, {"width_n50", width[50]}};
  p.check("width N=1", width[1], 0.1005 - 1e-3, 0.1005 + 1e-3);
  p.check("width N=5", width[5], 0.79 - 0.02, 0.79 + 0.02);
  p.check("width N=50", width[50], 0.9, 1.0);
  return p.finish("window width versus atom number at quarter-wavelength spacing");
}

FigureOutput fig4b(Panel p) {
  const std::vector<double> gammas = {1.0, 2.0, 4.0};
  const GridSpec grid{-6.0, 6.0, 1201};
  p.params() = {{"n", 5}, {"d", 0.25}, {"gamma1d", gammas}, {"grid", grid_json(grid)}};
  std::vector<std::vector<double>> rows;
  std::vector<double> scaled;
  for (double g : gammas) {
    const EmitterChain chain = build_uniform_chain(5, 0.25, g);
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "gamma1d_%g", g);
    p.spectrum(suffix, chain, grid, Engine::TransferMatrix);
    const auto w = try_window(chain);
    rows.push_back(window_row(g, w));
    if (w) scaled.push_back(w->width / g);
  }
  p.csv("windows", table_csv(with_key("gamma1d"), rows));
  double spread = 0.0;
  for (double s : scaled) spread = std::max(spread, std::abs(s - scaled.front()));
  p.summary() = {{"width_over_gamma1d_spread", spread}};
  p.check_true("window at every gamma1d", scaled.size() == gammas.size());
  p.check("spread of width / gamma1d", spread, 0.0, 1e-6);
  return p.finish("window growth with the waveguide coupling");
}

FigureOutput fig4c(Panel p) {
  const GridSpec grid{-4.0, 12.0, 3201};
  const std::vector<int> ns = {5, 50};
  const std::vector<double> inset = {0.005, 0.01, 0.015, 0.02, 0.03};
  p.params() = {{"d", 0.01}, {"n", ns}, {"inset_n", 50}, {"inset_d", inset},
                {"grid", grid_json(grid)}};
  std::map<int, double> width;
  std::vector<std::vector<double>> rows;
  for (int n : ns) {
    const EmitterChain chain = build_uniform_chain(n, 0.01);
    p.spectrum("n" + std::to_string(n), chain, grid, Engine::TransferMatrix);
    const auto w = try_window(chain);
    rows.push_back(window_row(n, w));
    width[n] = w ? w->width : 0.0;
  }
  p.csv("windows", table_csv(with_key("n"), rows));
  std::vector<std::vector<double>> inset_rows;
  for (double d : inset) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "inset_d%g", d);
    const EmitterChain chain = build_uniform_chain(50, d);
    p.spectrum(suffix, chain, grid, Engine::TransferMatrix);
    inset_rows.push_back(window_row(d, try_window(chain)));
  }
  p.csv("inset_windows", table_csv(with_key("d"), inset_rows));
  p.summary() = {{"width_n5", width[5]}, {"width_n50", width[50]}};
  p.check("width N=5, d=0.01", width[5], 0.79 - 0.02, 0.79 + 0.02);
  p.check("width N=50, d=0.01", width[50], 8.34 - 0.1, 8.34 + 0.1);
  return p.finish("near-Bragg spacing: five versus fifty atoms");
}

FigureOutput fig4d(Panel p) {
  const std::vector<int> ns = {10, 20, 30, 40, 50, 60};
  OptimizeOptions opts;
  p.params() = {{"n", ns}, {"threshold", opts.threshold}, {"d_range", {opts.d_lo, opts.d_hi}},
                {"grid_points", opts.grid_points}};
  std::vector<OptimizationResult> res;
  for (int n : ns) res.push_back(optimize_separation(n, opts));
  std::vector<std::vector<double>> rows;
  bool monotone = true;
  for (std::size_t i = 0; i < res.size(); ++i) {
    rows.push_back({static_cast<double>(res[i].n), res[i].d_star, res[i].width_star});
    if (i > 0 && !(res[i].width_star > res[i - 1].width_star)) monotone = false;
  }
  p.csv("optimum", table_csv({"n", "d_star", "width_star"}, rows));

  // Coefficient of determination of a straight-line fit width(N).
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double m = static_cast<double>(res.size());
  for (const auto& r : res) {
    const double x = r.n;
    const double y = r.width_star;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double cov = sxy - sx * sy / m;
  const double r2 = cov * cov / ((sxx - sx * sx / m) * (syy - sy * sy / m));
  const OptimizationResult& last = res.back();
  p.summary() = {{"rows", rows}, {"linear_fit_r2", r2}};
  p.check("width_star N=60", last.width_star, 9.5, 10.5);
  p.check("d_star N=60", last.d_star, 0.007, 0.009);
  p.check_true("width_star increases with N", monotone);
  p.check("linear fit r^2", r2, 0.99, 1.0);
  return p.finish("largest window and optimal separation versus atom number");
}

FigureOutput fig4e(Panel p) {
  const std::vector<double> deltas = {0.0, 0.2, 0.4, 1.0};
  const GridSpec grid{-4.0, 4.0, 1601};
  p.params() = {{"n", 5}, {"d", 0.25}, {"delta_step", deltas}, {"grid", grid_json(grid)}};
  for (double delta : deltas) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "delta_%g", delta);
    p.spectrum(suffix, build_modulated_chain(5, 0.25, delta), grid, Engine::TransferMatrix);
  }
  const auto rows = modulation_study(5, 0.25, deltas);
  std::vector<std::vector<double>> table;
  for (const auto& r : rows) table.push_back(window_row(r.delta_step, r.window));
  p.csv("windows", table_csv(with_key("delta_step"), table));
  const bool increasing =
      rows[1].window.width > rows[0].window.width && rows[2].window.width > rows[1].window.width;
  p.summary() = {{"widths", {rows[0].window.width, rows[1].window.width, rows[2].window.width,
                             rows[3].window.width}},
                 {"dips_at_delta_1", rows[3].window.dip_count}};
  p.check_true("width increases for delta 0, 0.2, 0.4", increasing);
  p.check("dips at delta = 1", rows[3].window.dip_count, 1.0, 1e9);
  return p.finish("window under gradient frequency modulation");
}

FigureOutput fig4f(Panel p) {
  const std::vector<int> ns = {5, 9, 15, 21};
  const GridSpec grid{-8.0, 8.0, 3201};
  p.params() = {{"n", ns}, {"d", 0.25}, {"delta_step", 0.4}, {"grid", grid_json(grid)}};
  std::vector<std::vector<double>> rows;
  std::vector<double> widths;
  for (int n : ns) {
    const EmitterChain chain = build_modulated_chain(n, 0.25, 0.4);
    p.spectrum("n" + std::to_string(n), chain, grid, Engine::TransferMatrix);
    const auto w = try_window(chain);
    rows.push_back(window_row(n, w));
    widths.push_back(w ? w->width : 0.0);
  }
  p.csv("windows", table_csv(with_key("n"), rows));
  const bool increasing = std::adjacent_find(widths.begin(), widths.end(),
                                             std::greater_equal<>()) == widths.end();
  p.summary() = {{"widths", widths}};
  p.check_true("width increases with N at delta = 0.4", increasing);
  return p.finish("modulated chains of increasing length");
}

FigureOutput dissipation_panel(Panel p, ChainSpec spec, GridSpec grid) {
  const std::vector<double> gammas = {0.0, 0.01, 0.1};
  p.params() = {{"chain", spec_json(spec)}, {"gamma_ext", gammas}, {"grid", grid_json(grid)}};
  for (double g : gammas) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "gamma_%g", g);
    p.spectrum(suffix, spec.build(g), grid, Engine::TransferMatrix);
  }
  const ChainSpec specs[] = {spec};
  const auto rows = dissipation_study(specs, gammas);
  std::vector<std::vector<double>> table;
  json summary = json::array();
  for (const auto& r : rows) {
    table.push_back({r.gamma_ext, r.reference.lo, r.reference.hi, r.min_R});
    summary.push_back(report_json(r));
  }
  p.csv("min_reflectivity", table_csv({"gamma_ext", "window_lo", "window_hi", "min_R"}, table));
  p.summary() = {{"rows", std::move(summary)}};
  p.check("min R inside window, gamma = 0", rows[0].min_R, 0.99 - 1e-9, 1.0);
  p.check("min R inside window, gamma = 0.01", rows[1].min_R, 0.915, 1.0);
  p.check_true("gamma = 0.1 lowers the minimum", rows[2].min_R < rows[1].min_R);
  return p.finish("reflection inside the lossless window with external dissipation");
}

FigureOutput fig5a(Panel p) { return dissipation_panel(std::move(p), {5, 0.25, 0.0, 1.0}, {-3, 3, 1201}); }
FigureOutput fig5b(Panel p) { return dissipation_panel(std::move(p), {5, 0.1, 0.0, 1.0}, {-3, 4, 1401}); }
FigureOutput fig5c(Panel p) { return dissipation_panel(std::move(p), {5, 0.25, 0.4, 1.0}, {-3, 3, 1201}); }

using Maker = FigureOutput (*)(Panel);

const std::vector<std::pair<std::string, Maker>>& registry() {
  static const std::vector<std::pair<std::string, Maker>> table = {
      {"fig2a", fig2a}, {"fig2b", fig2b}, {"fig2c", fig2c}, {"fig2d", fig2d},
      {"fig3a", fig3a}, {"fig3b", fig3b}, {"fig3c", fig3c}, {"fig3d", fig3d},
      {"fig3e", fig3e}, {"fig3f", fig3f}, {"fig4a", fig4a}, {"fig4b", fig4b},
      {"fig4c", fig4c}, {"fig4d", fig4d}, {"fig4e", fig4e}, {"fig4f", fig4f},
      {"fig5a", fig5a}, {"fig5b", fig5b}, {"fig5c", fig5c},
  };
  return table;
}

}  // namespace

bool FigureOutput::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FigureCheck& c) { return c.pass; });
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, _] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

FigureOutput reproduce(std::string_view id, const fs::path& out_dir) {
  for (const auto& [name, make] : registry()) {
    if (name == id) return make(Panel(name, out_dir));
  }
  std::string valid;
  for (const auto& name : figure_ids()) valid += (valid.empty() ? "" : ", ") + name;
  throw UnknownFigure("unknown figure '" + std::string(id) + "'; valid ids: " + valid);
}

}  // namespace wgqed
