#include "hmrac/observer.hpp"

#include <algorithm>
#include <cmath>

#include "hmrac/error.hpp"

namespace hmrac {

namespace {

ObserverConfig finish_observer(const Mat& A, Mat gain, const std::optional<Mat>& q) {
  const auto n = A.rows();
  ObserverConfig cfg;
  cfg.gain = std::move(gain);
  cfg.a_tau = A - cfg.gain;
  cfg.q = q.value_or(Mat::Identity(n, n));
  if (cfg.q.rows() != n || cfg.q.cols() != n) throw Error(ErrorCode::InvalidArgument, "observer Q has wrong shape");
  Eigen::SelfAdjointEigenSolver<Mat> qe(0.5 * (cfg.q + cfg.q.transpose()));
  if (qe.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorCode::InvalidArgument, "observer Q must be positive definite");
  cfg.p = solve_lyapunov(cfg.a_tau, cfg.q);
  return cfg;
}

}  // namespace

ObserverConfig make_observer(const Mat& A, const Mat& A_rm, double speed_margin, const std::optional<Mat>& q) {
  if (!(speed_margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "speed margin must be positive");
  if (!is_hurwitz(A_rm)) throw Error(ErrorCode::NotHurwitz, "reference model matrix is not Hurwitz");
  const double l = std::max(0.0, max_real_part(A)) + speed_margin * std::abs(min_real_part(A_rm));
  const auto n = A.rows();
  return finish_observer(A, l * Mat::Identity(n, n), q);
}

ObserverConfig make_observer_diagonal(const Mat& A, const Vec& gain_diag, const std::optional<Mat>& q) {
  if (gain_diag.size() != A.rows()) throw Error(ErrorCode::InvalidArgument, "observer gain has wrong length");
  return finish_observer(A, gain_diag.asDiagonal(), q);
}

Vec observer_deriv(const ObserverConfig& cfg, const ObserverState& s, const Vec& x, const Vec& u,
                   const Vec& delta_hat, const Mat& A, const Mat& B) {
  return A * s.x_hat + B * u + delta_hat + cfg.gain * (x - s.x_hat);
}

Vec tracking_error(const Vec& x, const ObserverState& s) { return x - s.x_hat; }

double uub_bound(const ObserverConfig& cfg, double eps_bar) {
  Eigen::SelfAdjointEigenSolver<Mat> pe(cfg.p, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> qe(cfg.q, Eigen::EigenvaluesOnly);
  return 2.0 * pe.eigenvalues().maxCoeff() * eps_bar / qe.eigenvalues().minCoeff();
}

}  // namespace hmrac
