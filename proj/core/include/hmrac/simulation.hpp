#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmrac/controller.hpp"
#include "hmrac/linalg.hpp"
#include "hmrac/observer.hpp"
#include "hmrac/plant.hpp"
#include "hmrac/uncertainty_net.hpp"

namespace hmrac {

enum class Variant {
  Hybrid,      // observer-gated SDC augmentation plus matched cancellation
  DirectOnly,  // Psi = A always, matched cancellation active
  FixedGain,   // nominal gains only, no adaptation, no cancellation
};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

struct ObserverSettings {
  double speed_margin = 2.0;
  std::optional<Vec> gain_diag;  // overrides speed_margin when set
  std::optional<Mat> q;          // identity when unset
  double eps_bar = 0.01;         // assumed approximation-error bound (diagnostic only)
};

struct ReferenceSettings {
  std::vector<Complex> poles{Complex(-3.0), Complex(-4.0), Complex(-5.0)};
  double kr = 1.0;  // B_rm = kr * B
  Command command;
};

struct SimConfig {
  std::string plant = "acc2018-benchmark";
  double dt = 0.05;
  double t_final = 120.0;
  std::optional<Vec> x0;  // zeros when unset
  Variant variant = Variant::Hybrid;
  double gamma = 1e-3;
  double hysteresis = 2.0;
  SdcConfig sdc;
  double gain_cache_tol = 1e-9;
  RbfConfig rbf;  // rbf.seed is replaced by `seed`
  ObserverSettings observer;
  ReferenceSettings reference;
  std::uint64_t seed = 42;
};

/// Throws Config / NotHurwitz for invalid settings.
void validate(const SimConfig& cfg);

struct StepRecord {
  double t = 0.0;
  Vec x, x_hat, x_rm;
  Vec u;
  double r = 0.0;
  double sigma = 0.0;
  Mode mode = Mode::Nominal;
  double e_norm = 0.0;
  double erm_norm = 0.0;
  Vec dm_true, dm_hat;
  Vec du_true, du_hat;
  double w_fro = 0.0;
  double sdc_resid = 0.0;
  Mat weights;
};

struct SynthesisEvent {
  double t = 0.0;
  Mode mode = Mode::Nominal;
  bool ok = false;
  double pole_error = 0.0;
  int ctrb_rank = 0;
  Mat closed_loop;  // Psi + B K
  std::string error;
};

enum class RunStatus { Ok, Diverged };

struct SimSummary {
  std::size_t records = 0;
  std::optional<double> first_switch_time;
  int switch_count = 0;  // Nominal -> Augmented transitions
  double augmented_fraction = 0.0;
  double final_max_e = 0.0;
  double final_mean_e = 0.0;
  double final_max_erm = 0.0;
  double final_mean_erm = 0.0;
  double rms_matched_error = 0.0;
  double rms_matched_error_first = 0.0;
  double rms_matched_error_final = 0.0;
  double rms_unmatched_error = 0.0;
  double peak_w_fro = 0.0;
  bool projection_active = false;
  double uub_bound = 0.0;
  bool uub_respected = false;  // final-quarter max |e| <= uub_bound
  std::size_t syntheses = 0;
  std::size_t synthesis_failures = 0;
  double max_pole_error = 0.0;
  double bound_pre_switch = 0.0;
  double bound_post_switch = 0.0;
  std::size_t lyapunov_modes = 0;
  bool lyapunov_all_pass = false;
  bool lyapunov_common = false;
};

struct SimLog {
  int n = 0, m = 0, m2 = 0;
  std::vector<StepRecord> records;
  std::vector<SynthesisEvent> syntheses;
  RunStatus status = RunStatus::Ok;
  std::string message;
  // context needed by the metrics
  double w_max = 0.0;
  double uub_bound = 0.0;
  double bound_pre_switch = 0.0;
  double bound_post_switch = 0.0;
  Mat A_rm, B_rm, K_nominal, K_r;
  ObserverConfig observer;
  Mat centers;
  SimSummary summary;
};

/// Runs one closed-loop simulation. Per step: observer error and sigma,
/// weight update, uncertainty split, mode update, gain synthesis, control,
/// then one joint RK4 step of (x, x_hat, x_rm) with u and W held.
/// Divergence stops the run and is reported in `status`, keeping the partial log.
SimLog run_simulation(const SimConfig& cfg);

SimSummary metrics(const SimLog& log);

/// A_rm = A + B k with k placing eig at `poles`.
Mat reference_matrix(const PlantModel& plant, std::span<const Complex> poles);

}  // namespace hmrac
