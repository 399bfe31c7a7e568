#pragma once

// Parameter sets, data tables and headline checks for each figure panel.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/runner.hpp"

#include "json.hpp"

namespace wgqed {

class UnknownFigure : public Error {
 public:
  using Error::Error;
};

// A headline number compared against its expected range: passes when
// lo <= value <= hi.
struct FigureCheck {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct FigureOutput {
  std::string id;
  nlohmann::json envelope;
  std::vector<OutputFile> files;  // CSV tables followed by <id>.json
  std::vector<FigureCheck> checks;

  bool checks_passed() const;
};

const std::vector<std::string>& figure_ids();

// Computes the panel into out_dir (nothing is written until write_outputs).
// Throws UnknownFigure listing the valid ids.
FigureOutput reproduce(std::string_view id, const std::filesystem::path& out_dir);

}  // namespace wgqed
