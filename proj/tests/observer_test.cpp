#include <gtest/gtest.h>

#include <random>

#include "hmrac/linalg.hpp"
#include "hmrac/observer.hpp"
#include "hmrac/plant.hpp"
#include "test_support.hpp"

using namespace hmrac;
using hmrac::testing::random_vector;

namespace {

Mat benchmark_reference() {
  const PlantModel p = make_plant("acc2018-benchmark");
  const std::vector<Complex> poles{-3.0, -4.0, -5.0};
  return p.A + p.B * place_poles_si(p.A, p.B, poles).transpose();
}

}  // namespace

TEST(Observer, ScalarShiftOnDiagonalPlant) {
  const Mat A = Vec(make_vec({-1.0, -1.0, 1.0})).asDiagonal();
  const ObserverConfig cfg = make_observer(A, benchmark_reference(), 2.0);
  EXPECT_LT((cfg.gain - 11.0 * Mat::Identity(3, 3)).norm(), 1e-10);
  const std::vector<Complex> expected{-12.0, -12.0, -10.0};
  EXPECT_LT(pole_mismatch(eigenvalues(cfg.a_tau), expected), 1e-12);
  EXPECT_LT(max_real_part(cfg.a_tau), -5.0);
}

TEST(Observer, HurwitzPlantStillShiftsLeft) {
  const Mat A = Vec(make_vec({-7.0, -8.0, -9.0})).asDiagonal();
  const ObserverConfig cfg = make_observer(A, benchmark_reference(), 1.5);
  EXPECT_GT(cfg.gain(0, 0), 0.0);
  EXPECT_LT(max_real_part(cfg.a_tau), max_real_part(A));
}

TEST(Observer, UnitMarginMatchesSlowestReferencePole) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const Mat A_rm = benchmark_reference();
  const ObserverConfig cfg = make_observer(p.A, A_rm, 1.0);
  EXPECT_LE(max_real_part(cfg.a_tau), min_real_part(A_rm) + 1e-12);
}

TEST(Observer, FasterThanReferenceAndLyapunovResidual) {
  std::mt19937_64 gen(20);
  const Mat A_rm = benchmark_reference();
  for (int trial = 0; trial < 50; ++trial) {
    const Mat A = hmrac::testing::random_matrix(gen, 3, 3);
    const double margin = std::uniform_real_distribution<double>(1.0, 4.0)(gen);
    const ObserverConfig cfg = make_observer(A, A_rm, margin);
    EXPECT_LT(max_real_part(cfg.a_tau), min_real_part(A_rm));
    EXPECT_LT(lyapunov_residual(cfg.a_tau, cfg.p, cfg.q), 1e-9);
  }
}

TEST(Observer, DiagonalGain) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const ObserverConfig cfg = make_observer_diagonal(p.A, make_vec({20.0, 20.0, 25.0}));
  EXPECT_TRUE(is_hurwitz(cfg.a_tau));
  EXPECT_DOUBLE_EQ(cfg.gain(2, 2), 25.0);
  EXPECT_DOUBLE_EQ(cfg.gain(0, 1), 0.0);
}

TEST(Observer, DerivativeEqualsPlantAtPerfectEstimate) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const ObserverConfig cfg = make_observer(p.A, benchmark_reference(), 2.0);
  std::mt19937_64 gen(21);
  for (int i = 0; i < 20; ++i) {
    const Vec x = random_vector(gen, 3);
    const Vec u = random_vector(gen, 1, -5, 5);
    const Vec delta = p.B * p.delta_m(x) + p.Bu * p.delta_u(x);
    const Vec d = observer_deriv(cfg, ObserverState{x}, x, u, delta, p.A, p.B);
    EXPECT_LT((d - plant_deriv(p, x, u)).norm(), 1e-12);
  }
}

TEST(Observer, ZeroEverythingGivesZero) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const ObserverConfig cfg = make_observer(p.A, benchmark_reference(), 2.0);
  const Vec d = observer_deriv(cfg, ObserverState{Vec::Zero(3)}, Vec::Zero(3), Vec::Zero(1), Vec::Zero(3), p.A, p.B);
  EXPECT_EQ(d.norm(), 0.0);
}

TEST(Observer, DerivativeMatchesHandWrittenFormula) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const ObserverConfig cfg = make_observer(p.A, benchmark_reference(), 2.0);
  const Vec x = make_vec({0.1, -0.2, 0.3});
  const Vec xh = make_vec({0.05, -0.1, 0.2});
  const Vec dh = make_vec({0.01, 0.02, -0.03});
  const double u = 0.4, l = cfg.gain(0, 0);
  const Vec expected = make_vec({
      -xh(0) + xh(1) + dh(0) + l * (x(0) - xh(0)),
      0.5 * xh(0) - xh(1) + xh(2) + dh(1) + l * (x(1) - xh(1)),
      xh(2) + u + dh(2) + l * (x(2) - xh(2)),
  });
  const Vec d = observer_deriv(cfg, ObserverState{xh}, x, make_vec({u}), dh, p.A, p.B);
  EXPECT_LT((d - expected).norm(), 1e-14);
}

TEST(Observer, TrackingError) {
  EXPECT_EQ(tracking_error(make_vec({1, 2, 3}), ObserverState{make_vec({1, 2, 3})}).norm(), 0.0);
  EXPECT_EQ(tracking_error(make_vec({1, 0, 0}), ObserverState{Vec::Zero(3)}), make_vec({1, 0, 0}));
}

TEST(Observer, UltimateBound) {
  ObserverConfig cfg;
  cfg.p = Mat::Identity(3, 3);
  cfg.q = Mat::Identity(3, 3);
  EXPECT_DOUBLE_EQ(uub_bound(cfg, 0.0), 0.0);
  EXPECT_NEAR(uub_bound(cfg, 0.01), 0.02, 1e-15);
  const PlantModel p = make_plant("acc2018-benchmark");
  EXPECT_GT(uub_bound(make_observer(p.A, benchmark_reference(), 2.0), 0.01), 0.0);
}
