#include "hmrac/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "hmrac/error.hpp"

namespace hmrac {

namespace {

// Plant states beyond this norm are treated as divergence.
constexpr double kDivergenceNorm = 1e8;

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

double rms(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  if (end <= begin) return 0.0;
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += v[i] * v[i];
  return std::sqrt(s / static_cast<double>(end - begin));
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Hybrid: return "hybrid";
    case Variant::DirectOnly: return "direct-only";
    case Variant::FixedGain: return "fixed-gain";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  const std::string key = lower(name);
  if (key == "hybrid") return Variant::Hybrid;
  if (key == "directonly" || key == "direct") return Variant::DirectOnly;
  if (key == "fixedgain" || key == "fixed") return Variant::FixedGain;
  return std::nullopt;
}

Mat reference_matrix(const PlantModel& plant, std::span<const Complex> poles) {
  const Vec k = place_poles_si(plant.A, plant.B, poles);
  return plant.A + plant.B * k.transpose();
}

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw Error(ErrorCode::Config, "dt must be positive");
  if (!(cfg.t_final >= 0.0)) throw Error(ErrorCode::Config, "t_final must be non-negative");
  if (!(cfg.gamma > 0.0)) throw Error(ErrorCode::Config, "switching threshold gamma must be positive");
  if (!(cfg.hysteresis >= 1.0)) throw Error(ErrorCode::Config, "hysteresis factor must be >= 1");
  if (!(cfg.sdc.epsilon > 0.0)) throw Error(ErrorCode::Config, "SDC epsilon must be positive");
  if (!(cfg.gain_cache_tol >= 0.0)) throw Error(ErrorCode::Config, "gain cache tolerance must be >= 0");
  if (!(cfg.observer.eps_bar >= 0.0)) throw Error(ErrorCode::Config, "eps_bar must be >= 0");
  for (const Complex& p : cfg.reference.poles) {
    if (!(p.real() < 0.0)) {
      throw Error(ErrorCode::NotHurwitz, "requested reference pole " + std::to_string(p.real()) + (p.imag() != 0.0 ? "+" + std::to_string(p.imag()) + "i" : std::string()) + " is not in the open left half-plane");
    }
  }
  const PlantModel plant = make_plant(cfg.plant);
  if (static_cast<int>(cfg.reference.poles.size()) != plant.state_dim()) {
    throw Error(ErrorCode::Config, "need exactly " + std::to_string(plant.state_dim()) + " reference poles");
  }
  if (cfg.x0 && cfg.x0->size() != plant.state_dim()) throw Error(ErrorCode::Config, "x0 has the wrong length");
  if (cfg.rbf.num_centers < 1) throw Error(ErrorCode::Config, "rbf centers must be >= 1");
  if (!(cfg.rbf.bandwidth > 0.0) || !(cfg.rbf.gamma > 0.0) || !(cfg.rbf.w_max > 0.0)) {
    throw Error(ErrorCode::Config, "rbf bandwidth, gamma and w_max must be positive");
  }
}

SimLog run_simulation(const SimConfig& cfg) {
  validate(cfg);
  const PlantModel plant = make_plant(cfg.plant);
  const int n = plant.state_dim();
  const int m = plant.input_dim();
  const Mat& A = plant.A;
  const Mat& B = plant.B;
  const Mat& Bu = plant.Bu;

  const SubspaceDecomposition decomp = make_decomposition(B, Bu);
  const std::span<const Complex> poles(cfg.reference.poles);

  SimLog log;
  log.n = n;
  log.m = m;
  log.m2 = plant.unmatched_dim();

  const Vec k_nominal = place_poles_si(A, B, poles);
  ReferenceModel rm;
  rm.A_rm = A + B * k_nominal.transpose();
  rm.B_rm = cfg.reference.kr * B;
  rm.command = cfg.reference.command;
  const Mat K_r = feedforward_gain(B, rm.B_rm);

  const ObserverConfig obs = cfg.observer.gain_diag
                                 ? make_observer_diagonal(A, *cfg.observer.gain_diag, cfg.observer.q)
                                 : make_observer(A, rm.A_rm, cfg.observer.speed_margin, cfg.observer.q);

  RbfConfig rbf_cfg = cfg.rbf;
  rbf_cfg.seed = cfg.seed;
  RbfNet net = RbfNet::from_config(rbf_cfg, n);

  log.A_rm = rm.A_rm;
  log.B_rm = rm.B_rm;
  log.K_nominal = k_nominal.transpose();
  log.K_r = K_r;
  log.observer = obs;
  log.centers = net.centers();
  log.w_max = net.w_max();
  log.uub_bound = uub_bound(obs, cfg.observer.eps_bar);

  auto record_synthesis = [&](double t, Mode mode, const Mat& Psi, const GainSet* g, const std::string& err) {
    SynthesisEvent ev;
    ev.t = t;
    ev.mode = mode;
    ev.ok = g != nullptr;
    ev.ctrb_rank = ctrb_rank(Psi, B).rank;
    if (g) {
      ev.pole_error = g->pole_error;
      ev.closed_loop = Psi + B * g->K;
    }
    ev.error = err;
    log.syntheses.push_back(std::move(ev));
  };

  const GainSet nominal_gains = synthesize_gains(A, B, poles, K_r, Mode::Nominal);
  record_synthesis(0.0, Mode::Nominal, A, &nominal_gains, {});

  const Vec x0 = cfg.x0.value_or(Vec::Zero(n));
  Vec x = x0;
  Vec x_hat = x0;
  Vec x_rm = x0;

  SwitchState sw;
  sw.gamma = cfg.gamma;
  sw.hysteresis_factor = cfg.hysteresis;

  GainSet gains = nominal_gains;
  bool cache_valid = false;
  double cached_sdc_norm = 0.0;

  const auto steps = static_cast<long>(std::floor(cfg.t_final / cfg.dt + 1e-9));
  log.records.reserve(static_cast<std::size_t>(steps + 1));

  for (long i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    const Vec e = tracking_error(x, ObserverState{x_hat});
    const double sigma = switching_signal(e);

    if (cfg.variant != Variant::FixedGain) net = net.update_weights(e, obs.p, x, cfg.dt);
    const UncertaintySplit split = split_estimate(net.predict_total(x), decomp);

    if (cfg.variant == Variant::Hybrid) {
      sw = mode_update(sw, sigma);
    } else {
      sw.last_sigma = sigma;
    }

    const Mat sdc = sdc_form(x_hat, split.unmatched, Bu, cfg.sdc);
    const double resid = sdc_residual(sdc, x_hat, split.unmatched, Bu);

    if (sw.mode == Mode::Augmented) {
      const double sdc_norm = sdc.norm();
      if (!cache_valid || std::abs(sdc_norm - cached_sdc_norm) >= cfg.gain_cache_tol) {
        const Mat Psi = A + sdc;
        try {
          GainSet next = synthesize_gains(Psi, B, poles, K_r, Mode::Augmented);
          record_synthesis(t, Mode::Augmented, Psi, &next, {});
          gains = std::move(next);
          cache_valid = true;
          cached_sdc_norm = sdc_norm;
        } catch (const Error& err) {
          // keep the previous gains for this step
          record_synthesis(t, Mode::Augmented, Psi, nullptr, err.what());
          cache_valid = false;
        }
      }
    } else {
      gains = nominal_gains;
      cache_valid = false;
    }

    const Vec dm_hat = cfg.variant == Variant::FixedGain ? Vec::Zero(m) : split.matched;
    const Vec r = make_vec({rm.command.value(t)});
    const Vec u = total_control(gains, x, r, dm_hat);

    StepRecord rec;
    rec.t = t;
    rec.x = x;
    rec.x_hat = x_hat;
    rec.x_rm = x_rm;
    rec.u = u;
    rec.r = r(0);
    rec.sigma = sigma;
    rec.mode = sw.mode;
    rec.e_norm = sigma;
    rec.erm_norm = (x - x_rm).norm();
    rec.dm_true = plant.delta_m(x);
    rec.dm_hat = dm_hat;
    rec.du_true = plant.delta_u(x);
    rec.du_hat = split.unmatched;
    rec.w_fro = net.weights().norm();
    rec.sdc_resid = resid;
    rec.weights = net.weights();
    log.records.push_back(std::move(rec));

    if (i == steps) break;

    Vec z(3 * n);
    z << x, x_hat, x_rm;
    const Derivative f = [&](double, const Vec& s) {
      const Vec xs = s.head(n);
      const ObserverState os{s.segment(n, n)};
      const Vec delta_hat = cfg.variant == Variant::FixedGain ? Vec::Zero(n) : net.predict_total(xs);
      Vec ds(3 * n);
      ds << plant_deriv(plant, xs, u), observer_deriv(obs, os, xs, u, delta_hat, A, B),
          reference_deriv_held(rm, s.tail(n), r);
      return ds;
    };
    try {
      z = rk4_step(f, z, t, cfg.dt);
    } catch (const Error& err) {
      log.status = RunStatus::Diverged;
      log.message = std::string(err.what()) + " at t = " + std::to_string(t);
      break;
    }
    x = z.head(n);
    x_hat = z.segment(n, n);
    x_rm = z.tail(n);
    if (x.norm() > kDivergenceNorm) {
      log.status = RunStatus::Diverged;
      log.message = "Diverged: plant state norm exceeded " + std::to_string(kDivergenceNorm) + " at t = " + std::to_string(t + cfg.dt);
      break;
    }
  }

  // Diagnostic ultimate bounds on the reference-tracking error.
  double xi_m = 0.0;
  double xi_u = 0.0;
  for (const StepRecord& rec : log.records) {
    if (rec.dm_true.size()) xi_m = std::max(xi_m, rec.dm_true.cwiseAbs().maxCoeff());
    if (rec.du_true.size()) xi_u = std::max(xi_u, rec.du_true.cwiseAbs().maxCoeff());
  }
  if (std::isfinite(xi_m) && std::isfinite(xi_u)) {
    const TrackingBoundReport bounds = condition1_check(rm.A_rm, B, Bu, xi_m, xi_u, Mat::Identity(n, n));
    log.bound_pre_switch = bounds.pre_switch;
    log.bound_post_switch = bounds.post_switch;
  }

  log.summary = metrics(log);
  return log;
}

SimSummary metrics(const SimLog& log) {
  SimSummary s;
  const auto& recs = log.records;
  const std::size_t count = recs.size();
  s.records = count;
  s.uub_bound = log.uub_bound;
  s.bound_pre_switch = log.bound_pre_switch;
  s.bound_post_switch = log.bound_post_switch;
  if (count == 0) return s;

  const std::size_t quarter = std::max<std::size_t>(1, count / 4);
  const std::size_t final_begin = count - quarter;

  Mode prev = Mode::Nominal;
  std::size_t augmented = 0;
  std::vector<double> matched_err(count), unmatched_err(count);
  for (std::size_t i = 0; i < count; ++i) {
    const StepRecord& r = recs[i];
    if (r.mode == Mode::Augmented) {
      ++augmented;
      if (prev == Mode::Nominal) {
        ++s.switch_count;
        if (!s.first_switch_time) s.first_switch_time = r.t;
      }
    }
    prev = r.mode;
    matched_err[i] = r.dm_hat.size() ? (r.dm_hat - r.dm_true).norm() : 0.0;
    unmatched_err[i] = r.du_hat.size() ? (r.du_hat - r.du_true).norm() : 0.0;
    s.peak_w_fro = std::max(s.peak_w_fro, r.w_fro);
  }
  s.augmented_fraction = static_cast<double>(augmented) / static_cast<double>(count);

  for (std::size_t i = final_begin; i < count; ++i) {
    s.final_max_e = std::max(s.final_max_e, recs[i].e_norm);
    s.final_max_erm = std::max(s.final_max_erm, recs[i].erm_norm);
    s.final_mean_e += recs[i].e_norm;
    s.final_mean_erm += recs[i].erm_norm;
  }
  s.final_mean_e /= static_cast<double>(quarter);
  s.final_mean_erm /= static_cast<double>(quarter);

  s.rms_matched_error = rms(matched_err, 0, count);
  s.rms_matched_error_first = rms(matched_err, 0, quarter);
  s.rms_matched_error_final = rms(matched_err, final_begin, count);
  s.rms_unmatched_error = rms(unmatched_err, 0, count);
  s.projection_active = log.w_max > 0.0 && s.peak_w_fro >= log.w_max * (1.0 - 1e-12);
  s.uub_respected = s.final_max_e <= s.uub_bound;

  std::vector<Mat> modes;
  for (const SynthesisEvent& ev : log.syntheses) {
    ++s.syntheses;
    if (!ev.ok) {
      ++s.synthesis_failures;
      continue;
    }
    s.max_pole_error = std::max(s.max_pole_error, ev.pole_error);
    modes.push_back(ev.closed_loop);
  }
  if (!modes.empty()) {
    const auto n = modes.front().rows();
    const ModeLyapunovReport rep = verify_mode_lyapunov(modes, Mat::Identity(n, n));
    s.lyapunov_modes = rep.modes.size();
    s.lyapunov_all_pass = rep.all_pass;
    s.lyapunov_common = rep.common_certified;
  }
  return s;
}

}  // namespace hmrac
