#pragma once

// JSON scenario configuration.
//
// Example:
//   {
//     "n": 5, "d": 0.25, "delta_step": 0.4, "gamma1d": 1.0, "gamma_ext": 0.0,
//     "grid": [-3, 3, 601],
//     "engine": "all",
//     "phase_model": "rigid",            // or {"dispersive": 1e6}
//     "threshold": 0.99,
//     "analysis": {"window": true, "zeros": true, "eigen": true, "optimize": false,
//                  "dissipation": {"gammas": [0.01, 0.1],
//                                  "scenarios": [{"n": 5, "d": 0.1}]}},
//     "output": {"dir": "out", "name": "run"}
//   }
// An explicit chain replaces n/d/delta_step/gamma1d/gamma_ext:
//   "atoms": [{"z": 0.0, "delta": 0.0, "gamma1d": 1.0, "gamma_ext": 0.0}, ...]

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgqed/core_model.hpp"
#include "wgqed/engines.hpp"
#include "wgqed/errors.hpp"

#include "json.hpp"

namespace wgqed {

struct FieldIssue {
  std::string field;
  std::string message;

  friend bool operator==(const FieldIssue&, const FieldIssue&) = default;
};

// Malformed document or failed validation. Carries every problem found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<FieldIssue> issues);
  const std::vector<FieldIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<FieldIssue> issues_;
};

struct GridSpec {
  double min = -10.0;
  double max = 10.0;
  std::size_t count = 2001;

  FrequencyGrid build() const { return FrequencyGrid::linspace(min, max, count); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct DissipationRequest {
  std::vector<double> gammas;
  // Empty means: the scenario's own chain.
  std::vector<ChainSpec> scenarios;

  friend bool operator==(const DissipationRequest&, const DissipationRequest&) = default;
};

struct AnalysisRequest {
  bool window = false;
  bool zeros = false;
  bool eigen = false;
  bool optimize = false;
  std::optional<DissipationRequest> dissipation;

  friend bool operator==(const AnalysisRequest&, const AnalysisRequest&) = default;
};

struct OutputSpec {
  std::string dir = ".";
  std::string name = "scenario";

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ScenarioConfig {
  // Exactly one of spec / atoms is set.
  std::optional<ChainSpec> spec;
  double gamma_ext = 0.0;
  std::vector<Emitter> atoms;

  GridSpec grid;
  std::vector<Engine> engines{std::begin(kAllEngines), std::end(kAllEngines)};
  PhaseModel phase_model = PhaseModel::rigid();
  double threshold = 0.99;
  AnalysisRequest analysis;
  OutputSpec output;

  bool all_engines() const { return engines.size() == std::size(kAllEngines); }
  EmitterChain chain() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parses and validates. Throws ConfigError listing the line/column of a
// syntax error, or every violated field constraint.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Canonical JSON form with all defaults spelled out.
nlohmann::json config_to_json(const ScenarioConfig& config);
std::string serialize_config(const ScenarioConfig& config);

// FNV-1a 64 over the canonical form, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

}  // namespace wgqed
