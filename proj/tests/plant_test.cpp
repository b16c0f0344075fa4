#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "hmrac/error.hpp"
#include "hmrac/plant.hpp"
#include "hmrac/simulation.hpp"
#include "test_support.hpp"

using namespace hmrac;
using hmrac::testing::random_vector;

namespace {

// Benchmark ODE written out directly.
Vec raw_rhs(const Vec& x, double u) {
  return make_vec({x(1) - x(0), 0.5 * x(0) - x(1) - x(0) * x(2), x(0) * x(1) - x(2) + u});
}

}  // namespace

TEST(Plant, Registry) {
  for (const std::string& name : plant_names()) {
    const PlantModel p = make_plant(name);
    EXPECT_EQ(p.name, name);
    EXPECT_EQ(p.state_dim(), 3);
    EXPECT_LT((p.Bu.transpose() * p.B).norm(), 1e-9);
    EXPECT_EQ(ctrb_rank(p.A, p.B).rank, 3);
  }
  EXPECT_THROW(make_plant("no-such-plant"), Error);
}

TEST(Plant, OriginIsEquilibrium) {
  for (const std::string& name : plant_names()) {
    EXPECT_EQ(plant_deriv(make_plant(name), Vec::Zero(3), Vec::Zero(1)).norm(), 0.0);
  }
}

TEST(Plant, BenchmarkDecomposedValue) {
  // A x + B (u + x1 x2) + B_u [x3 - x1 x3, x1 x2] at x = (1, 2, 3)
  const Vec d = plant_deriv(make_plant("acc2018-benchmark"), make_vec({1, 2, 3}), Vec::Zero(1));
  EXPECT_LT((d - make_vec({3.0, 1.5, 5.0})).norm(), 1e-14);
}

TEST(Plant, RawFormMatchesOdeAtOneTwoThree) {
  const Vec d = plant_deriv(make_plant("acc2018-raw"), make_vec({1, 2, 3}), Vec::Zero(1));
  EXPECT_LT((d - make_vec({1.0, -4.5, -1.0})).norm(), 1e-14);
}

TEST(Plant, DecomposedMatchesDirectOde) {
  const PlantModel p = make_plant("acc2018-raw");
  std::mt19937_64 gen(40);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = random_vector(gen, 3, -3, 3);
    const double u = std::uniform_real_distribution<double>(-5, 5)(gen);
    const Vec decomposed = p.A * x + p.B * (make_vec({u}) + p.delta_m(x)) + p.Bu * p.delta_u(x);
    EXPECT_LT((decomposed - raw_rhs(x, u)).norm(), 1e-12);
    EXPECT_LT((plant_deriv(p, x, make_vec({u})) - decomposed).norm(), 1e-12);
  }
}

TEST(Plant, NominalIsLinear) {
  const PlantModel p = make_plant("acc2018-nominal");
  std::mt19937_64 gen(41);
  for (int i = 0; i < 20; ++i) {
    const Vec x = random_vector(gen, 3, -3, 3);
    const Vec u = random_vector(gen, 1, -3, 3);
    EXPECT_LT((plant_deriv(p, x, u) - (p.A * x + p.B * u)).norm(), 1e-14);
  }
}

TEST(Plant, NonFiniteStateDiverges) {
  Vec x = Vec::Zero(3);
  x(0) = INFINITY;
  try {
    plant_deriv(make_plant("acc2018-benchmark"), x, Vec::Zero(1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Diverged);
  }
}

TEST(Command, Shapes) {
  Command sq;
  EXPECT_DOUBLE_EQ(sq.value(0.0), 1.0);
  EXPECT_DOUBLE_EQ(sq.value(19.9), 1.0);
  EXPECT_DOUBLE_EQ(sq.value(20.0), -1.0);
  EXPECT_DOUBLE_EQ(sq.value(45.0), 1.0);
  Command step{CommandKind::Step, 2.5};
  EXPECT_DOUBLE_EQ(step.value(0.0), 2.5);
  EXPECT_DOUBLE_EQ(step.value(100.0), 2.5);
  Command sines{CommandKind::Sines};
  sines.sines = {SineTerm{1.0, 0.25, 0.0}, SineTerm{0.5, 1.0, M_PI / 2}};
  EXPECT_NEAR(sines.value(1.0), std::sin(M_PI / 2) + 0.5 * std::cos(2 * M_PI), 1e-14);
}

TEST(ReferenceModel, ZeroAtRest) {
  ReferenceModel rm{Mat::Identity(3, 3) * -1.0, make_plant("acc2018-benchmark").B, Command{CommandKind::Step, 0.0}};
  EXPECT_EQ(reference_deriv(rm, Vec::Zero(3), 1.0).norm(), 0.0);
}

TEST(ReferenceModel, StepMatchesMatrixExponential) {
  const PlantModel p = make_plant("acc2018-benchmark");
  const std::vector<Complex> poles{-3.0, -4.0, -5.0};
  const ReferenceModel rm{reference_matrix(p, poles), p.B, Command{CommandKind::Step, 1.0}};
  const Derivative f = [&](double t, const Vec& z) { return reference_deriv(rm, z, t); };
  const Vec steady = -rm.A_rm.fullPivLu().solve(rm.B_rm * 1.0);
  Vec z = Vec::Zero(3);
  const double dt = 0.01;
  for (int k = 1; k <= 2000; ++k) {
    z = rk4_step(f, z, (k - 1) * dt, dt);
    const double t = k * dt;
    // x(t) = (e^{A t} - I) A^{-1} B r
    const Mat E = (rm.A_rm * t).exp();
    const Vec exact = (Mat::Identity(3, 3) - E) * steady;
    ASSERT_LT((z - exact).norm(), 1e-6) << "t=" << t;
  }
  EXPECT_LT((z - steady).norm(), 1e-6);
}

TEST(Rk4, ZeroFieldLeavesStateAlone) {
  const Vec z = make_vec({1.0, -2.0});
  const Derivative f = [](double, const Vec& s) { return Vec(Vec::Zero(s.size())); };
  EXPECT_EQ(rk4_step(f, z, 0.0, 0.1), z);
}

TEST(Rk4, ScalarDecay) {
  const Derivative f = [](double, const Vec& s) { return Vec(-s); };
  const double h = 0.05;
  const Vec z = rk4_step(f, make_vec({1.0}), 0.0, h);
  // one step reproduces the degree-4 Taylor polynomial of e^{-h}; the remainder is about h^5/120
  EXPECT_NEAR(z(0), 1.0 - h + h * h / 2 - h * h * h / 6 + h * h * h * h / 24, 1e-15);
  EXPECT_NEAR(z(0), std::exp(-h), 1.01 * std::pow(h, 5) / 120.0);
  EXPECT_NEAR(z(0), 0.951229, 1e-6);
}

TEST(Rk4, OneStepMatchesTruncatedSeries) {
  Mat A(2, 2);
  A << 0.0, 1.0, -2.0, -0.5;
  const Derivative f = [&](double, const Vec& s) { return Vec(A * s); };
  const Vec z0 = make_vec({1.0, 0.0});
  for (double dt : {0.1, 0.05, 0.025}) {
    const Mat h = A * dt;
    const Mat series = Mat::Identity(2, 2) + h + h * h / 2.0 + h * h * h / 6.0 + h * h * h * h / 24.0;
    EXPECT_LT((rk4_step(f, z0, 0.0, dt) - series * z0).norm(), 1e-15);
    EXPECT_LT((rk4_step(f, z0, 0.0, dt) - h.exp() * z0).norm(), 2.0 * std::pow(dt * A.norm(), 5) / 120.0);
  }
}

TEST(Rk4, FourthOrderConvergence) {
  Mat A(2, 2);
  A << 0.0, 1.0, -2.0, -0.5;
  const Derivative f = [&](double, const Vec& s) { return Vec(A * s); };
  const Vec z0 = make_vec({1.0, 0.0});
  const double T = 2.0;
  const Vec exact = (A * T).exp() * z0;
  auto err = [&](double dt) {
    Vec z = z0;
    const int steps = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < steps; ++k) z = rk4_step(f, z, k * dt, dt);
    return (z - exact).norm();
  };
  const double ratio = err(0.1) / err(0.05);
  EXPECT_NEAR(ratio, 16.0, 2.0);
}

TEST(Rk4, NonFiniteStageDiverges) {
  const Derivative f = [](double, const Vec& s) { return Vec(s.array() / 0.0); };
  EXPECT_THROW(rk4_step(f, make_vec({1.0}), 0.0, 0.1), Error);
}
