#pragma once

#include <optional>

#include "hmrac/linalg.hpp"

namespace hmrac {

// Luenberger observer x_hat' = A x_hat + B u + delta_hat + L (x - x_hat).
struct ObserverConfig {
  Mat gain;   // L_tau, diagonal
  Mat a_tau;  // A - L_tau, Hurwitz
  Mat p;      // solves a_tau^T p + p a_tau = -q
  Mat q;
};

struct ObserverState {
  Vec x_hat;
};

/// Uses L = l I with l = max(0, max Re eig(A)) + speed_margin * |min Re eig(A_rm)|,
/// which shifts every observer pole left of the slowest reference pole.
/// `q` defaults to the identity.
ObserverConfig make_observer(const Mat& A, const Mat& A_rm, double speed_margin,
                             const std::optional<Mat>& q = std::nullopt);

/// Observer with an explicit per-axis diagonal gain.
ObserverConfig make_observer_diagonal(const Mat& A, const Vec& gain_diag,
                                      const std::optional<Mat>& q = std::nullopt);

Vec observer_deriv(const ObserverConfig& cfg, const ObserverState& s, const Vec& x, const Vec& u,
                   const Vec& delta_hat, const Mat& A, const Mat& B);

Vec tracking_error(const Vec& x, const ObserverState& s);

/// Radius 2 lambda_max(P) eps_bar / lambda_min(Q) of the ultimate bound on |e|.
double uub_bound(const ObserverConfig& cfg, double eps_bar);

}  // namespace hmrac
