#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmrac/simulation.hpp"

namespace hmrac::cli {

struct Scenario {
  SimConfig sim;
  std::optional<std::string> csv_path;
  std::optional<std::string> plots_dir;
  std::vector<std::string> notices;  // defaults applied for missing keys
};

/// Parses the JSON scenario document. Unknown keys and malformed values raise
/// Error(Config); every defaulted key leaves one entry in `notices`.
Scenario parse_scenario(const std::string& json_text);

Scenario load_scenario(const std::string& path);

/// Applies HYBRID_MRAC_SEED when present in the environment.
void apply_seed_override(Scenario& sc);

}  // namespace hmrac::cli
