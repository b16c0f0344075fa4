#include <benchmark/benchmark.h>

#include <random>

#include "hmrac/controller.hpp"
#include "hmrac/linalg.hpp"
#include "hmrac/plant.hpp"
#include "hmrac/uncertainty_net.hpp"

using namespace hmrac;

namespace {

Mat stable_matrix(int n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = nd(gen);
  return M - (max_real_part(M) + 1.0) * Mat::Identity(n, n);
}

}  // namespace

static void BM_SolveLyapunov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mat A = stable_matrix(n);
  const Mat Q = Mat::Identity(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(A, Q));
}
BENCHMARK(BM_SolveLyapunov)->Arg(3)->Arg(6)->Arg(10);

static void BM_PlacePoles(benchmark::State& state) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const std::vector<Complex> poles{-3.0, -4.0, -5.0};
  for (auto _ : state) benchmark::DoNotOptimize(place_poles_si(p.A, p.B, poles));
}
BENCHMARK(BM_PlacePoles);

static void BM_SynthesizeAugmented(benchmark::State& state) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const std::vector<Complex> poles{-3.0, -4.0, -5.0};
  const Mat K_r = feedforward_gain(p.B, p.B);
  const Mat Psi = p.A + sdc_form(make_vec({0.1, -0.2, 0.05}), make_vec({0.3, 0.1}), p.Bu, SdcConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_gains(Psi, p.B, poles, K_r, Mode::Augmented));
}
BENCHMARK(BM_SynthesizeAugmented);

static void BM_RbfPhi(benchmark::State& state) {
  RbfConfig cfg;
  cfg.num_centers = static_cast<int>(state.range(0));
  const RbfNet net = RbfNet::from_config(cfg, 3);
  const Vec x = make_vec({0.1, -0.2, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(net.phi(x));
}
BENCHMARK(BM_RbfPhi)->Arg(10)->Arg(100);

static void BM_RbfUpdate(benchmark::State& state) {
  const RbfNet net = RbfNet::from_config(RbfConfig{}, 3);
  const Vec e = make_vec({1e-3, -2e-3, 5e-4});
  const Vec x = make_vec({0.1, -0.2, 0.3});
  const Mat P = Mat::Identity(3, 3) * 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(net.update_weights(e, P, x, 0.05));
}
BENCHMARK(BM_RbfUpdate);
