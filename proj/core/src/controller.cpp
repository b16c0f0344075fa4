#include "hmrac/controller.hpp"

#include <cmath>

#include "hmrac/error.hpp"

namespace hmrac {

double switching_signal(const Vec& e) { return e.norm(); }

SwitchState mode_update(const SwitchState& s, double sigma) {
  SwitchState next = s;
  next.last_sigma = sigma;
  if (s.mode == Mode::Nominal && sigma <= s.gamma) {
    next.mode = Mode::Augmented;
  } else if (s.mode == Mode::Augmented && sigma > s.hysteresis_factor * s.gamma) {
    next.mode = Mode::Nominal;
  }
  return next;
}

Mat sdc_form(const Vec& x, const Vec& delta_u_hat, const Mat& Bu, const SdcConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "SDC epsilon must be positive");
  const Vec v = Bu * delta_u_hat;
  const double denom = x.squaredNorm() + cfg.epsilon;
  if (cfg.form == SdcForm::PaperTranspose) return x * v.transpose() / denom;
  return v * x.transpose() / denom;
}

double sdc_residual(const Mat& sdc, const Vec& x, const Vec& delta_u_hat, const Mat& Bu) {
  return (sdc * x - Bu * delta_u_hat).norm();
}

Mat feedforward_gain(const Mat& B, const Mat& B_rm) {
  if (B.rows() != B_rm.rows()) throw Error(ErrorCode::InvalidArgument, "B and B_rm row mismatch");
  if (numerical_rank(B) != B.cols()) throw Error(ErrorCode::RankDeficient, "B must have full column rank");
  const Mat BtB = B.transpose() * B;
  return BtB.ldlt().solve(B.transpose() * B_rm);
}

GainSet synthesize_gains(const Mat& Psi, const Mat& B, std::span<const Complex> ref_poles, const Mat& K_r,
                         Mode mode_tag) {
  const Vec k = place_poles_si(Psi, B, ref_poles);
  GainSet g;
  g.K = k.transpose();
  g.K_r = K_r;
  g.mode_tag = mode_tag;
  const std::vector<Complex> closed = eigenvalues(Psi + B * g.K);
  g.pole_error = pole_mismatch(closed, ref_poles);
  if (!(g.pole_error <= kPoleMatchTolerance)) {
    throw Error(ErrorCode::SolveFailed, "closed-loop poles miss the reference poles by " + std::to_string(g.pole_error));
  }
  return g;
}

GainSet synthesize_gains(const Mat& Psi, const Mat& B, const Mat& A_rm, const Mat& B_rm, Mode mode_tag) {
  if (numerical_rank(B) != B.cols()) throw Error(ErrorCode::RankDeficient, "B must have full column rank");
  const std::vector<Complex> poles = eigenvalues(A_rm);
  return synthesize_gains(Psi, B, poles, feedforward_gain(B, B_rm), mode_tag);
}

Vec total_control(const GainSet& gains, const Vec& x, const Vec& r, const Vec& delta_m_hat) {
  return gains.K * x + gains.K_r * r - delta_m_hat;
}

TrackingBoundReport condition1_check(const Mat& A_rm, const Mat& B, const Mat& Bu, double xi_m_bar,
                                     double xi_u_bar, const Mat& Q) {
  if (!is_hurwitz(A_rm)) throw Error(ErrorCode::NotHurwitz, "reference model matrix is not Hurwitz");
  auto op_norm = [](const Mat& M) {
    if (M.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Mat>(M).singularValues()(0);
  };
  TrackingBoundReport rep;
  rep.lambda_min_q = Eigen::SelfAdjointEigenSolver<Mat>(Q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  const Mat P = solve_lyapunov(A_rm, Q);
  rep.lambda_max_p = Eigen::SelfAdjointEigenSolver<Mat>(P, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  const double matched = op_norm(B) * xi_m_bar;
  rep.pre_switch = (matched + op_norm(Bu) * xi_u_bar) / rep.lambda_min_q;
  rep.post_switch = matched / rep.lambda_min_q;
  return rep;
}

ModeLyapunovReport verify_mode_lyapunov(std::span<const Mat> modes, const Mat& Q) {
  ModeLyapunovReport rep;
  rep.all_pass = !modes.empty();
  rep.common_certified = !modes.empty();
  Mat first_p;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Mat& Ai = modes[i];
    ModeCertificate c;
    c.hurwitz = is_hurwitz(Ai);
    if (c.hurwitz) {
      try {
        const Mat P = solve_lyapunov(Ai, Q);
        c.residual = lyapunov_residual(Ai, P, Q);
        c.min_eig_p = Eigen::SelfAdjointEigenSolver<Mat>(P, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        c.positive_definite = c.min_eig_p > 0.0;
        if (i == 0) first_p = P;
      } catch (const Error&) {
        c.positive_definite = false;
      }
    }
    if (first_p.size() > 0) {
      const Mat lie = Ai.transpose() * first_p + first_p * Ai;
      const double top =
          Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (lie + lie.transpose()), Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
      c.certified_by_first = top < 0.0;
    }
    rep.all_pass = rep.all_pass && c.hurwitz && c.positive_definite;
    rep.common_certified = rep.common_certified && c.certified_by_first;
    rep.modes.push_back(c);
  }
  return rep;
}

}  // namespace hmrac
