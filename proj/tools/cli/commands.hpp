#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hmrac/simulation.hpp"

namespace hmrac::cli {

// Exit statuses shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDiverged = 2;

struct RunOptions {
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> plots_dir;
};

struct CompareOptions {
  std::string config_path;
  std::vector<std::string> variants;
  std::string out_dir;
};

struct SweepOptions {
  std::string config_path;
  std::string param;
  std::vector<double> values;
  std::string out_dir;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

/// Human-readable run summary.
std::string format_summary(const SimSummary& s);

/// Applies one sweep parameter (gamma, rate, bandwidth, epsilon, dt) to a
/// config. Returns false for an unknown parameter name.
bool apply_sweep_value(SimConfig& cfg, const std::string& param, double value);

}  // namespace hmrac::cli
