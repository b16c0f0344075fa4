#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hmrac/linalg.hpp"

namespace hmrac {

using StateMap = std::function<Vec(const Vec&)>;

// x' = A x + B (u + delta_m(x)) + B_u delta_u(x). The uncertainty maps are
// ground truth for the simulator; the controller only sees A, B, B_u.
struct PlantModel {
  std::string name;
  Mat A;
  Mat B;
  Mat Bu;
  StateMap delta_m;
  StateMap delta_u;

  int state_dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }
  int unmatched_dim() const { return static_cast<int>(Bu.cols()); }
};

/// Throws Diverged if x is not finite.
Vec plant_deriv(const PlantModel& p, const Vec& x, const Vec& u);

/// Registered plants:
///  - "acc2018-benchmark": third-order benchmark in its printed nominal +
///    matched/unmatched decomposition (delta_m = x1 x2, delta_u = [x3 - x1 x3, x1 x2]).
///  - "acc2018-raw": the benchmark ODE written directly
///    (x1' = x2 - x1, x2' = 0.5 x1 - x2 - x1 x3, x3' = x1 x2 - x3 + u), decomposed over
///    the same (A, B, B_u).
///  - "acc2018-nominal": same (A, B, B_u) with zero uncertainty.
PlantModel make_plant(const std::string& name);
std::vector<std::string> plant_names();

enum class CommandKind { Step, Square, Sines };

struct SineTerm {
  double amplitude = 1.0;
  double frequency_hz = 0.05;
  double phase = 0.0;
};

// Scalar reference command r(t).
struct Command {
  CommandKind kind = CommandKind::Square;
  double amplitude = 1.0;
  double period = 40.0;      // square wave: +amplitude for the first half-period
  std::vector<SineTerm> sines;

  double value(double t) const;
};

struct ReferenceModel {
  Mat A_rm;
  Mat B_rm;
  Command command;
};

/// x_rm' = A_rm x_rm + B_rm r(t)
Vec reference_deriv(const ReferenceModel& rm, const Vec& x_rm, double t);

/// Same with the command value supplied by the caller (zero-order hold).
Vec reference_deriv_held(const ReferenceModel& rm, const Vec& x_rm, const Vec& r);

using Derivative = std::function<Vec(double, const Vec&)>;

/// Classical four-stage Runge-Kutta step. Throws Diverged on non-finite stages.
Vec rk4_step(const Derivative& f, const Vec& z, double t, double dt);

}  // namespace hmrac
