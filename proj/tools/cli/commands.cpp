#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>

#include "csv_log.hpp"
#include "hmrac/error.hpp"
#include "scenario.hpp"
#include "svg_plot.hpp"

namespace hmrac::cli {

namespace {

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); }

Scenario load_with_notices(const std::string& path, std::ostream& err) {
  Scenario sc = load_scenario(path);
  apply_seed_override(sc);
  for (const std::string& note : sc.notices) err << "notice: " << note << '\n';
  return sc;
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return e.code() == ErrorCode::Diverged ? kExitDiverged : kExitConfig;
}

std::string csv_summary_header() {
  return "status,first_switch_time,switch_count,augmented_fraction,final_mean_e,final_max_e,final_mean_erm,"
         "final_max_erm,rms_matched_error_first,rms_matched_error_final,rms_unmatched_error,peak_w_fro";
}

std::string csv_summary_row(const SimLog& log) {
  const SimSummary& s = log.summary;
  std::string row = log.status == RunStatus::Ok ? "ok" : "diverged";
  row += "," + (s.first_switch_time ? format_number(*s.first_switch_time) : std::string());
  row += "," + std::to_string(s.switch_count);
  for (double v : {s.augmented_fraction, s.final_mean_e, s.final_max_e, s.final_mean_erm, s.final_max_erm,
                   s.rms_matched_error_first, s.rms_matched_error_final, s.rms_unmatched_error, s.peak_w_fro}) {
    row += "," + format_number(v);
  }
  return row;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Config, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

std::string format_summary(const SimSummary& s) {
  std::ostringstream os;
  os << "records                      " << s.records << '\n'
     << "first switch time [s]        " << opt_number(s.first_switch_time) << '\n'
     << "nominal->augmented switches  " << s.switch_count << '\n'
     << "augmented fraction           " << s.augmented_fraction << '\n'
     << "final-quarter |e| mean/max   " << s.final_mean_e << " / " << s.final_max_e << '\n'
     << "final-quarter |e_rm| mean/max " << s.final_mean_erm << " / " << s.final_max_erm << '\n'
     << "rms matched error (all/first/final quarter) " << s.rms_matched_error << " / " << s.rms_matched_error_first
     << " / " << s.rms_matched_error_final << '\n'
     << "rms unmatched error          " << s.rms_unmatched_error << '\n'
     << "peak |W|_F                   " << s.peak_w_fro << (s.projection_active ? " (projection active)" : "") << '\n'
     << "observer ultimate bound      " << s.uub_bound << (s.uub_respected ? " (final |e| inside)" : " (final |e| outside)")
     << '\n'
     << "tracking bound pre/post switch " << s.bound_pre_switch << " / " << s.bound_post_switch << '\n'
     << "gain syntheses               " << s.syntheses << " (failures " << s.synthesis_failures
     << ", max pole error " << s.max_pole_error << ")\n"
     << "per-mode Lyapunov            " << s.lyapunov_modes << " modes, "
     << (s.lyapunov_all_pass ? "all certified" : "NOT all certified")
     << (s.lyapunov_common ? ", common P found" : ", no common P from first mode") << '\n';
  return os.str();
}

bool apply_sweep_value(SimConfig& cfg, const std::string& param, double value) {
  if (param == "gamma") {
    cfg.gamma = value;
  } else if (param == "rate" || param == "adaptation_rate" || param == "adaptation-rate") {
    cfg.rbf.gamma = value;
  } else if (param == "bandwidth") {
    cfg.rbf.bandwidth = value;
  } else if (param == "epsilon") {
    cfg.sdc.epsilon = value;
  } else if (param == "dt") {
    cfg.dt = value;
  } else {
    return false;
  }
  return true;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Scenario sc = load_with_notices(opts.config_path, err);
    const SimLog log = run_simulation(sc.sim);
    const auto csv = opts.out_path ? opts.out_path : sc.csv_path;
    if (csv) write_csv_file(*csv, log);
    const auto plots = opts.plots_dir ? opts.plots_dir : sc.plots_dir;
    if (plots) write_run_plots(*plots, log);
    out << format_summary(log.summary);
    if (log.status == RunStatus::Diverged) {
      err << "error: " << log.message << '\n';
      return kExitDiverged;
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.variants.size() < 2) {
      err << "error: compare needs at least two variants\n";
      return kExitConfig;
    }
    std::vector<Variant> variants;
    std::set<Variant> seen;
    for (const std::string& name : opts.variants) {
      const auto v = parse_variant(name);
      if (!v) {
        err << "error: unknown variant '" << name << "' (expected hybrid, direct-only, fixed-gain)\n";
        return kExitConfig;
      }
      if (!seen.insert(*v).second) {
        err << "error: variant '" << name << "' listed twice\n";
        return kExitConfig;
      }
      variants.push_back(*v);
    }
    const Scenario sc = load_with_notices(opts.config_path, err);

    std::vector<std::future<SimLog>> jobs;
    for (Variant v : variants) {
      SimConfig cfg = sc.sim;
      cfg.variant = v;
      jobs.push_back(std::async(std::launch::async, [cfg] { return run_simulation(cfg); }));
    }
    std::vector<SimLog> logs;
    for (auto& j : jobs) logs.push_back(j.get());

    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    std::string table = "variant," + csv_summary_header() + "\n";
    bool diverged = false;
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const std::string name(to_string(variants[i]));
      write_csv_file((dir / (name + ".csv")).string(), logs[i]);
      table += name + "," + csv_summary_row(logs[i]) + "\n";
      diverged = diverged || logs[i].status == RunStatus::Diverged;
    }
    write_text(dir / "summary.csv", table);

    out << "variant        final-quarter mean |e_rm|   first switch [s]\n";
    for (std::size_t i = 0; i < logs.size(); ++i) {
      std::string name(to_string(variants[i]));
      name.resize(15, ' ');
      out << name << format_number(logs[i].summary.final_mean_erm) << "   "
          << opt_number(logs[i].summary.first_switch_time) << '\n';
    }
    return diverged ? kExitDiverged : kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.values.empty()) {
      err << "error: sweep needs at least one value\n";
      return kExitConfig;
    }
    const Scenario sc = load_with_notices(opts.config_path, err);
    std::vector<SimConfig> configs;
    for (double v : opts.values) {
      SimConfig cfg = sc.sim;
      if (!apply_sweep_value(cfg, opts.param, v)) {
        err << "error: unknown sweep parameter '" << opts.param << "' (expected gamma, rate, bandwidth, epsilon, dt)\n";
        return kExitConfig;
      }
      validate(cfg);
      configs.push_back(cfg);
    }

    std::vector<std::future<SimLog>> jobs;
    for (const SimConfig& cfg : configs) {
      jobs.push_back(std::async(std::launch::async, [cfg] { return run_simulation(cfg); }));
    }
    std::vector<SimLog> logs;
    for (auto& j : jobs) logs.push_back(j.get());

    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    std::string table = "param,value," + csv_summary_header() + "\n";
    bool diverged = false;
    for (std::size_t i = 0; i < logs.size(); ++i) {
      write_csv_file((dir / ("run_" + std::to_string(i) + ".csv")).string(), logs[i]);
      table += opts.param + "," + format_number(opts.values[i]) + "," + csv_summary_row(logs[i]) + "\n";
      diverged = diverged || logs[i].status == RunStatus::Diverged;
    }
    write_text(dir / "sweep.csv", table);
    out << table;
    return diverged ? kExitDiverged : kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace hmrac::cli
