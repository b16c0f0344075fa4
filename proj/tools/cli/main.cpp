#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hybrid direct-indirect MRAC simulator"};
  app.require_subcommand(1);

  hmrac::cli::RunOptions run;
  std::string run_out, run_plots;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario and write its CSV log");
  run_cmd->add_option("--config", run.config_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", run_out, "CSV output path");
  run_cmd->add_option("--plots", run_plots, "Directory for SVG figures");

  hmrac::cli::CompareOptions compare;
  auto* cmp_cmd = app.add_subcommand("compare", "Run several controller variants on one scenario");
  cmp_cmd->add_option("--config", compare.config_path, "Scenario JSON file")->required();
  cmp_cmd->add_option("--variants", compare.variants, "hybrid, direct-only, fixed-gain")->required()->delimiter(',');
  cmp_cmd->add_option("--out", compare.out_dir, "Output directory")->required();

  hmrac::cli::SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario across values of a parameter");
  sweep_cmd->add_option("--config", sweep.config_path, "Scenario JSON file")->required();
  sweep_cmd->add_option("--param", sweep.param, "gamma, rate, bandwidth, epsilon or dt")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hmrac::cli::kExitConfig;
  }

  if (*run_cmd) {
    if (!run_out.empty()) run.out_path = run_out;
    if (!run_plots.empty()) run.plots_dir = run_plots;
    return hmrac::cli::cmd_run(run, std::cout, std::cerr);
  }
  if (*cmp_cmd) return hmrac::cli::cmd_compare(compare, std::cout, std::cerr);
  return hmrac::cli::cmd_sweep(sweep, std::cout, std::cerr);
}
