// Command-line front end. Exit codes: 0 success, 2 configuration error,
// 3 numerical error, 4 failed `reproduce --check`.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wgqed/analysis.hpp"
#include "wgqed/config.hpp"
#include "wgqed/eigen_band.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/figures.hpp"
#include "wgqed/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

int run_config(const std::string& path, const std::string& out_dir, const std::string& command) {
  wgqed::ScenarioConfig cfg = wgqed::load_config(path);
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  wgqed::RunPlan plan = wgqed::RunPlan::from_config(cfg);
  if (command != "spectrum") {
    plan = {};
    plan.spectra = false;
    plan.window = command == "window";
    plan.zeros = command == "zeros";
    plan.eigen = command == "eigen";
    plan.dissipation = command == "dissipation";
  }
  const wgqed::RunResult res = wgqed::run_scenario(cfg, plan);
  wgqed::write_outputs(res.files);
  std::cout << res.envelope.dump(2) << '\n';
  return res.analysis_failed ? kExitNumerical : 0;
}

int run_reproduce(const std::string& id, const std::string& out_dir, bool check) {
  const wgqed::FigureOutput fig = wgqed::reproduce(id, out_dir);
  wgqed::write_outputs(fig.files);
  for (const auto& f : fig.files) std::cout << f.path.string() << '\n';
  if (!check) return 0;
  for (const auto& c : fig.checks) {
    std::printf("%s %s: %.10g (expected [%.10g, %.10g])\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.lo, c.hi);
  }
  return fig.checks_passed() ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon scattering off emitter chains coupled to a waveguide.\n"
               "Worker threads: WGQED_WORKERS (default: hardware concurrency)."};
  app.set_version_flag("--version", std::string(wgqed::kToolName) + " " + wgqed::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  for (const char* name : {"spectrum", "eigen", "window", "zeros", "dissipation"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the '") + name + "' task of a config");
    sub->add_option("config", config_path, "JSON scenario file")->required();
    sub->add_option("--out", out_dir, "Override output.dir");
  }

  double kd = 0.0;
  auto* band = app.add_subcommand("band", "Infinite-chain band gap at phase kd");
  band->add_option("--kd", kd, "Nearest-neighbour phase k0*d in radians")->required();

  int n = 0;
  wgqed::OptimizeOptions opt;
  auto* optimize = app.add_subcommand("optimize", "Separation maximising the window width");
  optimize->add_option("--n", n, "Number of atoms")->required()->check(CLI::Range(2, 100000));
  optimize->add_option("--threshold", opt.threshold, "Reflectivity threshold");
  optimize->add_option("--d-min", opt.d_lo, "Smallest separation (lambda0)");
  optimize->add_option("--d-max", opt.d_hi, "Largest separation (lambda0)");
  optimize->add_option("--grid-points", opt.grid_points, "Coarse grid size");

  std::string figure;
  bool check = false;
  std::string figure_dir = "figures";
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the data behind a figure panel");
  reproduce->add_option("figure_id", figure, "fig2a..fig2d, fig3a..fig3f, fig4a..fig4f, fig5a..fig5c")
      ->required();
  reproduce->add_flag("--check", check, "Compare headline numbers with expectations");
  reproduce->add_option("--out", figure_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    for (const char* name : {"spectrum", "eigen", "window", "zeros", "dissipation"}) {
      if (app.got_subcommand(name)) return run_config(config_path, out_dir, name);
    }
    if (*band) {
      std::cout << wgqed::report_json(wgqed::bandgap(kd)).dump(2) << '\n';
      return 0;
    }
    if (*optimize) {
      std::cout << wgqed::report_json(wgqed::optimize_separation(n, opt)).dump(2) << '\n';
      return 0;
    }
    if (*reproduce) return run_reproduce(figure, figure_dir, check);
  } catch (const wgqed::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const wgqed::InvalidParameter& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const wgqed::UnknownFigure& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const wgqed::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
