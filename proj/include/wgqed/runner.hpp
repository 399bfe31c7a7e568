#pragma once

// Executes a scenario configuration and assembles the JSON result envelope.

#include <filesystem>
#include <string>
#include <vector>

#include "wgqed/analysis.hpp"
#include "wgqed/config.hpp"
#include "wgqed/eigen_band.hpp"

#include "json.hpp"

namespace wgqed {

inline constexpr const char* kToolName = "wgqed";
inline constexpr const char* kToolVersion = "1.0.0";

struct OutputFile {
  std::filesystem::path path;
  std::string content;
};

// Which parts of a scenario to execute.
struct RunPlan {
  bool spectra = true;
  bool window = false;
  bool zeros = false;
  bool eigen = false;
  bool optimize = false;
  bool dissipation = false;

  // Spectra plus whatever the configuration's analysis block requests.
  static RunPlan from_config(const ScenarioConfig& config);
};

struct RunResult {
  nlohmann::json envelope;
  // CSV data files followed by the envelope itself.
  std::vector<OutputFile> files;
  // Some requested analysis raised a numerical error (recorded in the envelope).
  bool analysis_failed = false;
};

// Per-frequency engine failures are recorded, not fatal. Analyses that fail
// are recorded under their name as {"error": message}.
RunResult run_scenario(const ScenarioConfig& config, const RunPlan& plan);
RunResult run_scenario(const ScenarioConfig& config);

void write_outputs(const std::vector<OutputFile>& files);

nlohmann::json report_json(const WindowReport& w);
nlohmann::json report_json(const ZeroCrossing& z);
nlohmann::json report_json(const OptimizationResult& o);
nlohmann::json report_json(const DissipationRow& row);
nlohmann::json report_json(const EigenmodeSet& set);
nlohmann::json report_json(const GapReport& gap);
nlohmann::json spec_json(const ChainSpec& spec);

// {"tool", "version", "timestamp", "config_hash"}; the timestamp is UTC ISO-8601.
nlohmann::json provenance(const std::string& config_hash);

}  // namespace wgqed
