#include "hmrac/plant.hpp"

#include <cmath>
#include <numbers>

#include "hmrac/error.hpp"

namespace hmrac {

namespace {

Mat benchmark_A() {
  Mat A(3, 3);
  A << -1.0, 1.0, 0.0,
        0.5, -1.0, 1.0,
        0.0, 0.0, 1.0;
  return A;
}

Mat benchmark_B() { return make_vec({0.0, 0.0, 1.0}); }

Mat benchmark_Bu() {
  Mat Bu(3, 2);
  Bu << 0.0, 1.0,
        1.0, 0.0,
        0.0, 0.0;
  return Bu;
}

}  // namespace

Vec plant_deriv(const PlantModel& p, const Vec& x, const Vec& u) {
  if (!x.allFinite()) throw Error(ErrorCode::Diverged, "plant state is not finite");
  Vec dx = p.A * x + p.B * (u + p.delta_m(x));
  if (p.Bu.cols() > 0) dx += p.Bu * p.delta_u(x);
  return dx;
}

PlantModel make_plant(const std::string& name) {
  PlantModel p;
  p.name = name;
  p.A = benchmark_A();
  p.B = benchmark_B();
  p.Bu = benchmark_Bu();
  if (name == "acc2018-benchmark") {
    p.delta_m = [](const Vec& x) { return make_vec({x(0) * x(1)}); };
    p.delta_u = [](const Vec& x) { return make_vec({x(2) - x(0) * x(2), x(0) * x(1)}); };
  } else if (name == "acc2018-raw") {
    // f(x) - A x = [0, -x3 - x1 x3, x1 x2 - 2 x3]
    p.delta_m = [](const Vec& x) { return make_vec({x(0) * x(1) - 2.0 * x(2)}); };
    p.delta_u = [](const Vec& x) { return make_vec({-x(2) - x(0) * x(2), 0.0}); };
  } else if (name == "acc2018-nominal") {
    p.delta_m = [](const Vec&) { return make_vec({0.0}); };
    p.delta_u = [](const Vec&) { return make_vec({0.0, 0.0}); };
  } else {
    throw Error(ErrorCode::Config, "unknown plant '" + name + "'");
  }
  return p;
}

std::vector<std::string> plant_names() { return {"acc2018-benchmark", "acc2018-raw", "acc2018-nominal"}; }

double Command::value(double t) const {
  switch (kind) {
    case CommandKind::Step:
      return amplitude;
    case CommandKind::Square: {
      const double phase = std::fmod(t, period);
      return (phase < 0.5 * period) ? amplitude : -amplitude;
    }
    case CommandKind::Sines: {
      double r = 0.0;
      for (const SineTerm& s : sines) {
        r += s.amplitude * std::sin(2.0 * std::numbers::pi * s.frequency_hz * t + s.phase);
      }
      return r;
    }
  }
  return 0.0;
}

Vec reference_deriv_held(const ReferenceModel& rm, const Vec& x_rm, const Vec& r) {
  return rm.A_rm * x_rm + rm.B_rm * r;
}

Vec reference_deriv(const ReferenceModel& rm, const Vec& x_rm, double t) {
  return reference_deriv_held(rm, x_rm, make_vec({rm.command.value(t)}));
}

Vec rk4_step(const Derivative& f, const Vec& z, double t, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "rk4_step: dt must be positive");
  const Vec k1 = f(t, z);
  const Vec k2 = f(t + 0.5 * dt, z + 0.5 * dt * k1);
  const Vec k3 = f(t + 0.5 * dt, z + 0.5 * dt * k2);
  const Vec k4 = f(t + dt, z + dt * k3);
  Vec next = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!k1.allFinite() || !k2.allFinite() || !k3.allFinite() || !k4.allFinite() || !next.allFinite()) {
    throw Error(ErrorCode::Diverged, "non-finite value inside an RK4 step");
  }
  return next;
}

}  // namespace hmrac
