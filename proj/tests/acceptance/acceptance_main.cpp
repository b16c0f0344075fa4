// Acceptance checks for the benchmark scenario and the numerical kernels.
// Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "commands.hpp"
#include "hmrac/controller.hpp"
#include "hmrac/linalg.hpp"
#include "hmrac/plant.hpp"
#include "hmrac/simulation.hpp"
#include "hmrac/uncertainty_net.hpp"
#include "test_support.hpp"

using namespace hmrac;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct BenchRuns {
  SimLog hybrid;
  SimLog direct;
  double hybrid_seconds = 0.0;
};

BenchRuns run_benchmark() {
  BenchRuns b;
  SimConfig cfg;  // defaults are the benchmark scenario
  const auto t0 = std::chrono::steady_clock::now();
  b.hybrid = run_simulation(cfg);
  b.hybrid_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  cfg.variant = Variant::DirectOnly;
  b.direct = run_simulation(cfg);
  return b;
}

void criterion1(const BenchRuns& b) {
  const SimSummary& s = b.hybrid.summary;
  const double amplitude = SimConfig{}.reference.command.amplitude;
  const bool ok = b.hybrid.status == RunStatus::Ok && b.hybrid.records.size() == 2401 && s.switch_count >= 1 &&
                  s.final_mean_erm < 0.1 * amplitude && b.hybrid_seconds < 5.0;
  std::ostringstream d;
  d << "status=" << (b.hybrid.status == RunStatus::Ok ? "ok" : "diverged") << " records=" << b.hybrid.records.size()
    << " switches=" << s.switch_count << fmt(" final-quarter mean |e_rm|=%.4g (limit %.3g)", s.final_mean_erm, 0.1 * amplitude)
    << fmt(" runtime=%.3fs", b.hybrid_seconds);
  report(1, ok, "benchmark reproduction", d.str());
}

void criterion2() {
  const PlantModel p = make_plant("acc2018-benchmark");
  std::mt19937_64 gen(2001);
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = testing::random_vector(gen, 3, -2.0, 2.0);
    const Vec d = testing::random_vector(gen, 2, -5.0, 5.0);
    const Mat Ap = sdc_form(x, d, p.Bu, SdcConfig{1e-6, SdcForm::PaperTranspose});
    const double n = (Ap * p.B).norm();
    worst = std::max(worst, n);
    if (n > 1e-12 || ctrb_rank(p.A + Ap, p.B).rank != 3) ++bad;
  }
  report(2, bad == 0, "SDC keeps (A + A'(x), B) controllable",
         std::to_string(bad) + " failures of 1000, max |A'B|=" + fmt("%.3g", worst));
}

void criterion3(const BenchRuns& b) {
  const std::vector<Complex> poles{-3.0, -4.0, -5.0};
  std::size_t bad = 0;
  double worst = 0.0;
  for (const SynthesisEvent& ev : b.hybrid.syntheses) {
    if (!ev.ok) {
      ++bad;
      continue;
    }
    const double err = pole_mismatch(eigenvalues(ev.closed_loop), poles);
    worst = std::max(worst, err);
    if (err > 1e-6) ++bad;
  }
  const bool ok = !b.hybrid.syntheses.empty() && bad == 0;
  report(3, ok, "matching condition at every synthesis",
         std::to_string(b.hybrid.syntheses.size()) + " syntheses, " + std::to_string(bad) +
             " mismatches, worst pole error " + fmt("%.3g", worst));
}

void criterion4() {
  std::mt19937_64 gen(4001);
  std::uniform_int_distribution<int> dim(1, 6);
  int bad = 0;
  double worst_res = 0.0, worst_oracle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dim(gen);
    const Mat A = testing::random_hurwitz(gen, n);
    const Mat Q = Mat::Identity(n, n);
    const Mat P = solve_lyapunov(A, Q);
    const Mat P_ref = testing::lyapunov_oracle(A, Q);
    const double res = lyapunov_residual(A, P, Q);
    const double dev = (P - P_ref).norm() / std::max(1.0, P_ref.norm());
    const double min_eig = Eigen::SelfAdjointEigenSolver<Mat>(P).eigenvalues().minCoeff();
    worst_res = std::max(worst_res, res);
    worst_oracle = std::max(worst_oracle, dev);
    if (!(res < 1e-9) || !(min_eig > 0.0) || !(dev < 1e-9)) ++bad;
  }
  report(4, bad == 0, "Lyapunov solver",
         std::to_string(bad) + " failures of 100, worst residual " + fmt("%.3g", worst_res) +
             ", worst relative oracle deviation " + fmt("%.3g", worst_oracle));
}

void criterion5(const BenchRuns& b) {
  auto violations = [](const SimLog& log, double& peak) {
    std::size_t v = 0;
    peak = 0.0;
    for (const StepRecord& r : log.records) {
      peak = std::max(peak, r.w_fro);
      if (r.w_fro > log.w_max + 1e-12) ++v;
    }
    return v;
  };
  double peak = 0.0, tight_peak = 0.0;
  const std::size_t v = violations(b.hybrid, peak);
  // Same benchmark with a radius small enough that the projection engages.
  SimConfig tight;
  tight.rbf.w_max = 5e-6;
  const SimLog t = run_simulation(tight);
  const std::size_t vt = violations(t, tight_peak);
  const bool reached = tight_peak >= tight.rbf.w_max * (1.0 - 1e-9);
  report(5, v == 0 && vt == 0 && t.status == RunStatus::Ok, "projection keeps |W|_F <= w_max",
         std::to_string(v + vt) + " violations; benchmark peak " + fmt("%.3g", peak) + " (w_max " +
             fmt("%.3g", b.hybrid.w_max) + "); tight run peak " + fmt("%.6g of %.3g", tight_peak, tight.rbf.w_max) +
             (reached ? " (boundary reached)" : " (boundary not reached)"));
}

void criterion6() {
  std::mt19937_64 gen(6001);
  int bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 6)(gen);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(gen);
    const int m2 = std::uniform_int_distribution<int>(1, n - m)(gen);
    const Mat O = testing::random_orthogonal(gen, n);
    const Mat B = O.leftCols(m) * testing::random_matrix(gen, m, m);
    const Mat Bu = O.middleCols(m, m2) * testing::random_matrix(gen, m2, m2);
    const Vec dm = testing::random_vector(gen, m, -3.0, 3.0);
    const Vec du = testing::random_vector(gen, m2, -3.0, 3.0);
    const UncertaintySplit s = split_estimate(B * dm + Bu * du, make_decomposition(B, Bu));
    const double err = std::max((s.matched - dm).norm(), (s.unmatched - du).norm());
    worst = std::max(worst, err);
    if (!(err < 1e-8)) ++bad;
  }
  report(6, bad == 0, "decomposition round trip",
         std::to_string(bad) + " failures of 100, worst error " + fmt("%.3g", worst));
}

void criterion7(const BenchRuns& b) {
  const SimSummary& s = b.hybrid.summary;
  const double ratio = s.rms_matched_error_final > 0.0 ? s.rms_matched_error_first / s.rms_matched_error_final : INFINITY;
  report(7, s.rms_matched_error_final * 5.0 <= s.rms_matched_error_first, "matched uncertainty learning",
         fmt("rms matched error first quarter %.4g, final quarter %.4g", s.rms_matched_error_first,
             s.rms_matched_error_final) +
             fmt(", improvement %.3gx (need >= %.0fx)", ratio, 5.0));
}

void criterion8(const BenchRuns& b) {
  const double h = b.hybrid.summary.final_mean_erm;
  const double d = b.direct.summary.final_mean_erm;
  report(8, h <= d, "hybrid tracks no worse than direct-only",
         fmt("final-quarter mean |e_rm| hybrid %.6g, direct-only %.6g", h, d));
}

void criterion9() {
  Mat A(2, 2);
  A << 0.0, 1.0, -2.0, -0.5;
  const Derivative f = [&](double, const Vec& z) { return Vec(A * z); };
  const Vec z0 = make_vec({1.0, 0.0});
  const double T = 2.0;
  const Vec exact = (A * T).exp() * z0;
  auto err = [&](double dt) {
    Vec z = z0;
    const int steps = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < steps; ++k) z = rk4_step(f, z, k * dt, dt);
    return (z - exact).norm();
  };
  const double e1 = err(0.1), e2 = err(0.05), e3 = err(0.025);
  const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
  report(9, order >= 3.8, "RK4 convergence order",
         fmt("observed order %.3f (errors %.3g", order, e1) + fmt(", %.3g", e2) + fmt(", %.3g)", e3));
}

void criterion10(const std::string& scenario) {
  const fs::path dir = fs::temp_directory_path() / "hmrac_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream out, err;
  const int a = cli::cmd_run({scenario, (dir / "a.csv").string(), std::nullopt}, out, err);
  const int b = cli::cmd_run({scenario, (dir / "b.csv").string(), std::nullopt}, out, err);
  const std::string ca = slurp(dir / "a.csv"), cb = slurp(dir / "b.csv");
  const bool ok = a == 0 && b == 0 && !ca.empty() && ca == cb;
  report(10, ok, "byte-identical CSV on repeat runs",
         "exit codes " + std::to_string(a) + "/" + std::to_string(b) + ", sizes " + std::to_string(ca.size()) + "/" +
             std::to_string(cb.size()) + (ca == cb ? ", identical" : ", differ"));
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string scenario = argc > 1 ? argv[1] : HMRAC_BENCHMARK_SCENARIO;
  const BenchRuns b = run_benchmark();
  criterion1(b);
  criterion2();
  criterion3(b);
  criterion4();
  criterion5(b);
  criterion6();
  criterion7(b);
  criterion8(b);
  criterion9();
  criterion10(scenario);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
