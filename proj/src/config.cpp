#include "wgqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace wgqed {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<FieldIssue>& issues) {
  std::string out = "invalid configuration";
  for (const auto& i : issues) out += "\n  " + i.field + ": " + i.message;
  return out;
}

// Walks a parsed document, recording every problem instead of stopping at
// the first one.
class Reader {
 public:
  std::vector<FieldIssue> issues;

  void fail(std::string field, std::string message) {
    issues.push_back({std::move(field), std::move(message)});
  }

  void reject_unknown(const json& obj, const std::string& prefix,
                      std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        fail(prefix + key, "unknown field");
      }
    }
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(path, "must be a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<long long> integer(const json& obj, const std::string& key,
                                   const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15) {
        return static_cast<long long>(x);
      }
    }
    fail(path, "must be an integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(path, "must be true or false");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key,
                                    const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail(path, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  // n, d, delta_step, gamma1d of a compact chain description.
  std::optional<ChainSpec> chain_spec(const json& obj, const std::string& prefix) {
    ChainSpec spec;
    bool ok = true;
    if (const auto n = integer(obj, "n", prefix + "n")) {
      if (*n < 1 || *n > 100000) {
        fail(prefix + "n", "must be between 1 and 100000");
        ok = false;
      } else {
        spec.n = static_cast<int>(*n);
      }
    } else {
      if (!obj.contains("n")) fail(prefix + "n", "required");
      ok = false;
    }
    if (const auto d = number(obj, "d", prefix + "d")) {
      if (!(*d > 0.0)) {
        fail(prefix + "d", "must be positive");
        ok = false;
      } else {
        spec.d = *d;
      }
    } else {
      if (!obj.contains("d")) fail(prefix + "d", "required");
      ok = false;
    }
    if (obj.contains("delta_step")) {
      if (const auto x = number(obj, "delta_step", prefix + "delta_step")) {
        spec.delta_step = *x;
      } else {
        ok = false;
      }
    }
    if (obj.contains("gamma1d")) {
      const auto g = number(obj, "gamma1d", prefix + "gamma1d");
      if (g && !(*g > 0.0)) fail(prefix + "gamma1d", "must be positive");
      if (g && *g > 0.0) {
        spec.gamma1d = *g;
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return spec;
  }

  std::optional<double> non_negative(const json& obj, const std::string& key,
                                     const std::string& path) {
    const auto x = number(obj, key, path);
    if (x && *x < 0.0) {
      fail(path, "must be non-negative");
      return std::nullopt;
    }
    return x;
  }
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void read_chain(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  const bool explicit_atoms = doc.contains("atoms");
  const bool compact = doc.contains("n") || doc.contains("d") || doc.contains("delta_step") ||
                       doc.contains("gamma1d");
  if (explicit_atoms && compact) {
    rd.fail("atoms", "cannot be combined with n, d, delta_step or gamma1d");
    return;
  }
  if (const auto g = rd.non_negative(doc, "gamma_ext", "gamma_ext")) cfg.gamma_ext = *g;

  if (!explicit_atoms) {
    cfg.spec = rd.chain_spec(doc, "");
    return;
  }
  if (doc.contains("gamma_ext")) {
    rd.fail("gamma_ext", "set gamma_ext per atom when atoms are given");
  }
  const json& atoms = doc.at("atoms");
  if (!atoms.is_array() || atoms.empty()) {
    rd.fail("atoms", "must be a non-empty array");
    return;
  }
  bool ok = true;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const std::string path = "atoms[" + std::to_string(j) + "].";
    const json& a = atoms[j];
    if (!a.is_object()) {
      rd.fail("atoms[" + std::to_string(j) + "]", "must be an object");
      ok = false;
      continue;
    }
    rd.reject_unknown(a, path, {"z", "delta", "gamma1d", "gamma_ext"});
    Emitter e;
    if (const auto z = rd.number(a, "z", path + "z")) {
      e.z = *z;
    } else {
      if (!a.contains("z")) rd.fail(path + "z", "required");
      ok = false;
    }
    if (a.contains("delta")) {
      if (const auto x = rd.number(a, "delta", path + "delta")) e.delta = *x;
      else ok = false;
    }
    if (a.contains("gamma1d")) {
      const auto g = rd.number(a, "gamma1d", path + "gamma1d");
      if (g && !(*g > 0.0)) rd.fail(path + "gamma1d", "must be positive");
      if (g && *g > 0.0) e.gamma1d = *g;
      else ok = false;
    }
    if (a.contains("gamma_ext")) {
      if (const auto g = rd.non_negative(a, "gamma_ext", path + "gamma_ext")) e.gamma_ext = *g;
      else ok = false;
    }
    cfg.atoms.push_back(e);
  }
  if (!ok) return;
  for (std::size_t j = 1; j < cfg.atoms.size(); ++j) {
    if (!(cfg.atoms[j].z > cfg.atoms[j - 1].z)) {
      rd.fail("atoms", "positions z must be strictly increasing");
      break;
    }
  }
}

void read_grid(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("grid")) return;
  const json& g = doc.at("grid");
  if (!g.is_array() || g.size() != 3) {
    rd.fail("grid", "must be [min, max, count]");
    return;
  }
  const json wrapped = {{"min", g[0]}, {"max", g[1]}, {"count", g[2]}};
  const auto lo = rd.number(wrapped, "min", "grid.min");
  const auto hi = rd.number(wrapped, "max", "grid.max");
  const auto count = rd.integer(wrapped, "count", "grid.count");
  if (count && *count < 1) rd.fail("grid.count", "must be at least 1");
  if (count && *count > 10000000) rd.fail("grid.count", "must not exceed 10000000");
  if (lo && hi && count && *count > 1 && !(*hi > *lo)) {
    rd.fail("grid.max", "must exceed grid.min");
  }
  if (lo && hi && count && *count >= 1 && *count <= 10000000) {
    cfg.grid = {*lo, *hi, static_cast<std::size_t>(*count)};
  }
}

void read_engine(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("engine")) return;
  const json& e = doc.at("engine");
  std::vector<std::string> names;
  if (e.is_string()) {
    names.push_back(e.get<std::string>());
  } else if (e.is_array() && !e.empty()) {
    for (const auto& x : e) {
      if (!x.is_string()) {
        rd.fail("engine", "entries must be engine names");
        return;
      }
      names.push_back(x.get<std::string>());
    }
  } else {
    rd.fail("engine", "must be an engine name, \"all\" or a list of names");
    return;
  }
  if (names.size() == 1 && names[0] == "all") return;
  std::set<Engine> chosen;
  for (const auto& n : names) {
    if (const auto parsed = parse_engine(n)) {
      chosen.insert(*parsed);
    } else {
      rd.fail("engine", "unknown engine '" + n +
                            "' (expected exact, modal, recurrence, transfer-matrix or all)");
    }
  }
  // Canonical order is the order of kAllEngines.
  cfg.engines.clear();
  for (Engine x : kAllEngines) {
    if (chosen.count(x)) cfg.engines.push_back(x);
  }
  if (cfg.engines.empty()) cfg.engines.assign(std::begin(kAllEngines), std::end(kAllEngines));
}

void read_phase_model(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("phase_model")) return;
  const json& p = doc.at("phase_model");
  if (p.is_string() && p.get<std::string>() == "rigid") return;
  if (p.is_object() && p.size() == 1 && p.contains("dispersive")) {
    const auto ratio = rd.number(p, "dispersive", "phase_model.dispersive");
    if (ratio && !(*ratio > 0.0)) rd.fail("phase_model.dispersive", "must be positive");
    if (ratio && *ratio > 0.0) cfg.phase_model = PhaseModel::dispersive(*ratio);
    return;
  }
  rd.fail("phase_model", "must be \"rigid\" or {\"dispersive\": omega0_over_gamma0}");
}

void read_analysis(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("analysis")) return;
  const json& a = doc.at("analysis");
  if (!a.is_object()) {
    rd.fail("analysis", "must be an object");
    return;
  }
  rd.reject_unknown(a, "analysis.", {"window", "zeros", "eigen", "optimize", "dissipation"});
  if (const auto b = rd.boolean(a, "window", "analysis.window")) cfg.analysis.window = *b;
  if (const auto b = rd.boolean(a, "zeros", "analysis.zeros")) cfg.analysis.zeros = *b;
  if (const auto b = rd.boolean(a, "eigen", "analysis.eigen")) cfg.analysis.eigen = *b;
  if (const auto b = rd.boolean(a, "optimize", "analysis.optimize")) cfg.analysis.optimize = *b;
  if (!a.contains("dissipation")) return;

  const json& d = a.at("dissipation");
  json gammas;
  DissipationRequest req;
  if (d.is_array()) {
    gammas = d;
  } else if (d.is_object()) {
    rd.reject_unknown(d, "analysis.dissipation.", {"gammas", "scenarios"});
    if (d.contains("gammas")) gammas = d.at("gammas");
    if (d.contains("scenarios")) {
      const json& sc = d.at("scenarios");
      if (!sc.is_array()) {
        rd.fail("analysis.dissipation.scenarios", "must be an array");
      } else {
        for (std::size_t i = 0; i < sc.size(); ++i) {
          const std::string prefix = "analysis.dissipation.scenarios[" + std::to_string(i) + "].";
          if (!sc[i].is_object()) {
            rd.fail(prefix.substr(0, prefix.size() - 1), "must be an object");
            continue;
          }
          rd.reject_unknown(sc[i], prefix, {"n", "d", "delta_step", "gamma1d"});
          if (const auto s = rd.chain_spec(sc[i], prefix)) req.scenarios.push_back(*s);
        }
      }
    }
  } else {
    rd.fail("analysis.dissipation", "must be a list of gammas or {gammas, scenarios}");
    return;
  }
  if (!gammas.is_array() || gammas.empty()) {
    rd.fail("analysis.dissipation.gammas", "must be a non-empty array");
    return;
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const std::string path = "analysis.dissipation.gammas[" + std::to_string(i) + "]";
    const json wrapped = {{"g", gammas[i]}};
    if (const auto g = rd.non_negative(wrapped, "g", path)) req.gammas.push_back(*g);
  }
  cfg.analysis.dissipation = std::move(req);
}

void read_output(Reader& rd, const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("output")) return;
  const json& o = doc.at("output");
  if (!o.is_object()) {
    rd.fail("output", "must be an object");
    return;
  }
  rd.reject_unknown(o, "output.", {"dir", "name"});
  if (const auto dir = rd.string(o, "dir", "output.dir")) {
    if (dir->empty()) rd.fail("output.dir", "must not be empty");
    else cfg.output.dir = *dir;
  }
  if (const auto name = rd.string(o, "name", "output.name")) {
    if (name->empty() || name->find_first_of("/\\") != std::string::npos) {
      rd.fail("output.name", "must be a non-empty file stem without path separators");
    } else {
      cfg.output.name = *name;
    }
  }
}

// Preconditions that involve more than one field.
void cross_check(Reader& rd, ScenarioConfig& cfg) {
  const bool have_chain = cfg.spec.has_value() || !cfg.atoms.empty();
  if (!have_chain) return;
  if (cfg.analysis.optimize && (!cfg.spec || cfg.spec->n < 2)) {
    rd.fail("analysis.optimize", "requires a compact chain with n >= 2");
  }
  if (cfg.analysis.dissipation && cfg.analysis.dissipation->scenarios.empty() && !cfg.spec) {
    rd.fail("analysis.dissipation.scenarios", "required when the chain is given as atoms");
  }
  if (cfg.analysis.zeros) {
    const bool lossy = cfg.spec ? cfg.gamma_ext > 0.0
                                : std::any_of(cfg.atoms.begin(), cfg.atoms.end(),
                                              [](const Emitter& e) { return e.gamma_ext > 0.0; });
    if (lossy) rd.fail("analysis.zeros", "reflection zeros require a lossless chain");
  }
  try {
    (void)cfg.chain();
  } catch (const InvalidParameter& e) {
    rd.fail(cfg.spec ? e.field() : "atoms", e.what());
  }
}

json spec_to_json(const ChainSpec& s) {
  return {{"n", s.n}, {"d", s.d}, {"delta_step", s.delta_step}, {"gamma1d", s.gamma1d}};
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

EmitterChain ScenarioConfig::chain() const {
  if (spec) return spec->build(gamma_ext);
  return EmitterChain(atoms, Reference::Resonance);
}

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ConfigError({FieldIssue{"document", "syntax error at line " + std::to_string(line) +
                                        ", column " + std::to_string(col)}});
  }
  if (!doc.is_object()) throw ConfigError({FieldIssue{"document", "top level must be a JSON object"}});

  Reader rd;
  ScenarioConfig cfg;
  rd.reject_unknown(doc, "", {"n", "d", "delta_step", "gamma1d", "gamma_ext", "atoms", "grid",
                              "engine", "phase_model", "threshold", "analysis", "output"});
  read_chain(rd, doc, cfg);
  read_grid(rd, doc, cfg);
  read_engine(rd, doc, cfg);
  read_phase_model(rd, doc, cfg);
  if (const auto th = rd.number(doc, "threshold", "threshold")) {
    if (*th > 0.0 && *th < 1.0) cfg.threshold = *th;
    else rd.fail("threshold", "must lie strictly between 0 and 1");
  }
  read_analysis(rd, doc, cfg);
  read_output(rd, doc, cfg);
  if (rd.issues.empty()) cross_check(rd, cfg);
  if (!rd.issues.empty()) throw ConfigError(std::move(rd.issues));
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({FieldIssue{"document", "cannot open " + path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json config_to_json(const ScenarioConfig& c) {
  json out;
  if (c.spec) {
    out = spec_to_json(*c.spec);
    out["gamma_ext"] = c.gamma_ext;
  } else {
    json atoms = json::array();
    for (const auto& a : c.atoms) {
      atoms.push_back(
          {{"z", a.z}, {"delta", a.delta}, {"gamma1d", a.gamma1d}, {"gamma_ext", a.gamma_ext}});
    }
    out["atoms"] = std::move(atoms);
  }
  out["grid"] = {c.grid.min, c.grid.max, c.grid.count};
  if (c.all_engines()) {
    out["engine"] = "all";
  } else if (c.engines.size() == 1) {
    out["engine"] = std::string(to_string(c.engines.front()));
  } else {
    json names = json::array();
    for (Engine e : c.engines) names.push_back(std::string(to_string(e)));
    out["engine"] = std::move(names);
  }
  if (c.phase_model.is_rigid()) {
    out["phase_model"] = "rigid";
  } else {
    out["phase_model"] = {{"dispersive", c.phase_model.ratio()}};
  }
  out["threshold"] = c.threshold;
  json analysis = {{"window", c.analysis.window},
                   {"zeros", c.analysis.zeros},
                   {"eigen", c.analysis.eigen},
                   {"optimize", c.analysis.optimize}};
  if (c.analysis.dissipation) {
    json scenarios = json::array();
    for (const auto& s : c.analysis.dissipation->scenarios) scenarios.push_back(spec_to_json(s));
    analysis["dissipation"] = {{"gammas", c.analysis.dissipation->gammas},
                               {"scenarios", std::move(scenarios)}};
  }
  out["analysis"] = std::move(analysis);
  out["output"] = {{"dir", c.output.dir}, {"name", c.output.name}};
  return out;
}

std::string serialize_config(const ScenarioConfig& config) {
  return config_to_json(config).dump(2);
}

std::string config_hash(const ScenarioConfig& config) {
  const std::string canonical = config_to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wgqed
