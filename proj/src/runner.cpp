#include "wgqed/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>

#include "wgqed/csv_io.hpp"
#include "wgqed/engines.hpp"
#include "wgqed/errors.hpp"

namespace wgqed {

using nlohmann::json;

namespace {

struct EngineRun {
  Engine engine;
  std::optional<SweepResult> result;
  std::string error;
};

// Largest |r_a - r_b| and |t_a - t_b| over frequencies both engines evaluated.
std::pair<double, double> max_deviation(const Spectrum& a, const Spectrum& b) {
  std::map<double, const ScatterPoint*> lookup;
  for (const auto& p : b.points) lookup.emplace(p.delta_omega, &p);
  double dr = 0.0;
  double dt = 0.0;
  for (const auto& p : a.points) {
    const auto it = lookup.find(p.delta_omega);
    if (it == lookup.end()) continue;
    dr = std::max(dr, std::abs(p.r - it->second->r));
    dt = std::max(dt, std::abs(p.t - it->second->t));
  }
  return {dr, dt};
}

template <class F>
json guarded(F&& f, bool& failed) {
  try {
    return f();
  } catch (const InvalidParameter&) {
    throw;
  } catch (const Error& e) {
    failed = true;
    return json{{"error", e.what()}};
  }
}

std::string eigen_csv(const EigenmodeSet& set) {
  std::vector<std::vector<double>> rows;
  for (const auto& m : set.modes) {
    rows.push_back({m.lambda.real(), m.lambda.imag(), -m.lambda.imag(), m.overlap.real(),
                    m.overlap.imag()});
  }
  return table_csv({"re_lambda", "im_lambda", "decay", "re_overlap", "im_overlap"}, rows);
}

}  // namespace

RunPlan RunPlan::from_config(const ScenarioConfig& c) {
  RunPlan p;
  p.window = c.analysis.window;
  p.zeros = c.analysis.zeros;
  p.eigen = c.analysis.eigen;
  p.optimize = c.analysis.optimize;
  p.dissipation = c.analysis.dissipation.has_value();
  return p;
}

json report_json(const WindowReport& w) {
  return {{"threshold", w.threshold},       {"lo", w.lo},
          {"hi", w.hi},                     {"width", w.width},
          {"min_r_inside", w.min_r_inside}, {"dip_count", w.dip_count}};
}

json report_json(const ZeroCrossing& z) {
  return {{"delta_omega", z.delta_omega},
          {"residual_r", z.residual_r},
          {"phase_jump", z.phase_jump}};
}

json report_json(const OptimizationResult& o) {
  return {{"n", o.n},
          {"d_star", o.d_star},
          {"width_star", o.width_star},
          {"evaluations", o.evaluations}};
}

json spec_json(const ChainSpec& s) {
  return {{"n", s.n}, {"d", s.d}, {"delta_step", s.delta_step}, {"gamma1d", s.gamma1d}};
}

json report_json(const DissipationRow& row) {
  return {{"scenario", row.scenario},
          {"chain", spec_json(row.spec)},
          {"gamma_ext", row.gamma_ext},
          {"reference_window", report_json(row.reference)},
          {"min_R", row.min_R}};
}

json report_json(const EigenmodeSet& set) {
  json modes = json::array();
  for (const auto& m : set.modes) {
    modes.push_back({{"re", m.lambda.real()},
                     {"im", m.lambda.imag()},
                     {"decay", -m.lambda.imag()},
                     {"radiance", to_string(m.radiance)},
                     {"overlap", {m.overlap.real(), m.overlap.imag()}}});
  }
  return {{"modes", std::move(modes)},
          {"near_defective", set.near_defective},
          {"min_bilinear_norm", set.min_bilinear_norm}};
}

json report_json(const GapReport& g) {
  return {{"kd", g.kd},
          {"edge_lower", g.edge_lower},
          {"edge_upper", g.edge_upper},
          {"width", g.width},
          {"center", g.center()}};
}

json provenance(const std::string& config_hash) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"timestamp", stamp},
          {"config_hash", config_hash}};
}

RunResult run_scenario(const ScenarioConfig& config) {
  return run_scenario(config, RunPlan::from_config(config));
}

RunResult run_scenario(const ScenarioConfig& config, const RunPlan& plan) {
  RunResult out;
  const EmitterChain chain = config.chain();
  const PhaseModel& model = config.phase_model;
  const std::filesystem::path dir = config.output.dir;
  const std::string& name = config.output.name;
  const std::string hash = config_hash(config);

  json& env = out.envelope;
  env["config"] = config_to_json(config);
  env["provenance"] = provenance(hash);
  env["chain"] = {{"atoms", chain.size()},
                  {"reference", to_string(chain.reference())},
                  {"lossless", chain.lossless()}};

  if (plan.spectra) {
    const FrequencyGrid grid = config.grid.build();
    std::vector<EngineRun> runs;
    for (Engine e : config.engines) {
      EngineRun run{e, std::nullopt, {}};
      try {
        run.result = sweep_collect(chain, grid, model, e);
      } catch (const Error& err) {
        run.error = err.what();
      }
      runs.push_back(std::move(run));
    }
    json spectra = json::object();
    for (const auto& run : runs) {
      const std::string engine_name(to_string(run.engine));
      if (!run.result) {
        spectra[engine_name] = {{"error", run.error}};
        continue;
      }
      const auto file = dir / (name + "_" + engine_name + ".csv");
      out.files.push_back({file, spectrum_csv(run.result->spectrum)});
      json failures = json::array();
      for (const auto& f : run.result->failures) {
        failures.push_back(
            {{"index", f.index}, {"delta_omega", f.delta_omega}, {"message", f.message}});
      }
      spectra[engine_name] = {{"file", file.filename().string()},
                              {"points", run.result->spectrum.points.size()},
                              {"failures", std::move(failures)}};
    }
    env["spectra"] = std::move(spectra);

    if (config.all_engines()) {
      const EngineRun* ref = nullptr;
      for (const auto& run : runs) {
        if (run.result) {
          ref = &run;
          break;
        }
      }
      json cross = json::object();
      if (ref) {
        double worst = 0.0;
        json per = json::object();
        for (const auto& run : runs) {
          if (!run.result || &run == ref) continue;
          const auto [dr, dt] = max_deviation(ref->result->spectrum, run.result->spectrum);
          per[std::string(to_string(run.engine))] = {{"max_abs_dr", dr}, {"max_abs_dt", dt}};
          worst = std::max(worst, dr);
        }
        cross = {{"reference", std::string(to_string(ref->engine))},
                 {"engines", std::move(per)},
                 {"max_abs_dr", worst}};
      }
      env["cross_engine"] = std::move(cross);
    }
  }

  json analysis = json::object();
  bool& failed = out.analysis_failed;
  if (plan.window) {
    analysis["window"] = guarded(
        [&] {
          WindowOptions opts;
          opts.threshold = config.threshold;
          return report_json(extract_window(chain, model, opts));
        },
        failed);
  }
  if (plan.zeros) {
    analysis["zeros"] = guarded(
        [&] {
          json list = json::array();
          for (const auto& z : find_zeros(chain, std::nullopt, model)) {
            list.push_back(report_json(z));
          }
          return json{{"count", list.size()}, {"zeros", std::move(list)}};
        },
        failed);
  }
  if (plan.eigen) {
    analysis["eigen"] = guarded(
        [&] {
          const EigenmodeSet set =
              eigenmodes(build_heff(chain, model), incident_vector(chain, model, 0.0));
          const auto file = dir / (name + "_eigen.csv");
          out.files.push_back({file, eigen_csv(set)});
          json j = report_json(set);
          j["file"] = file.filename().string();
          return j;
        },
        failed);
  }
  if (plan.optimize) {
    analysis["optimize"] = guarded(
        [&] {
          if (!config.spec) throw InvalidParameter("analysis.optimize", "needs n and d");
          OptimizeOptions opts;
          opts.threshold = config.threshold;
          return report_json(optimize_separation(config.spec->n, opts, model));
        },
        failed);
  }
  if (plan.dissipation) {
    analysis["dissipation"] = guarded(
        [&] {
          DissipationRequest req = config.analysis.dissipation.value_or(DissipationRequest{});
          if (req.gammas.empty()) req.gammas = {0.01, 0.1};
          if (req.scenarios.empty()) {
            if (!config.spec) throw InvalidParameter("analysis.dissipation", "needs scenarios");
            req.scenarios.push_back(*config.spec);
          }
          json rows = json::array();
          for (const auto& row :
               dissipation_study(req.scenarios, req.gammas, config.threshold, model)) {
            rows.push_back(report_json(row));
          }
          return rows;
        },
        failed);
  }
  if (!analysis.empty()) env["analysis"] = std::move(analysis);

  out.files.push_back({dir / (name + ".json"), env.dump(2) + "\n"});
  return out;
}

void write_outputs(const std::vector<OutputFile>& files) {
  for (const auto& f : files) write_file_atomic(f.path, f.content);
}

}  // namespace wgqed
