#pragma once

#include <span>
#include <vector>

#include "hmrac/linalg.hpp"

namespace hmrac {

enum class Mode { Nominal = 0, Augmented = 1 };

struct SwitchState {
  Mode mode = Mode::Nominal;
  double gamma = 1e-3;              // on-threshold
  double hysteresis_factor = 2.0;   // off-threshold = hysteresis_factor * gamma
  double last_sigma = 0.0;
};

/// sigma = |e|_2
double switching_signal(const Vec& e);

/// Nominal -> Augmented when sigma <= gamma; Augmented -> Nominal when
/// sigma > hysteresis_factor * gamma. A factor of 1 is the single-threshold rule.
SwitchState mode_update(const SwitchState& s, double sigma);

enum class SdcForm {
  PaperTranspose,       // x (B_u d)^T / (x^T x + eps); keeps A'(x) B = 0
  OuterReconstruction,  // (B_u d) x^T / (x^T x + eps); A'(x) x ~ B_u d
};

struct SdcConfig {
  double epsilon = 1e-6;
  SdcForm form = SdcForm::PaperTranspose;
};

/// State-dependent coefficient matrix A'(x) for the unmatched estimate.
Mat sdc_form(const Vec& x, const Vec& delta_u_hat, const Mat& Bu, const SdcConfig& cfg);

/// |A'(x) x - B_u d|, the reconstruction error of the SDC factorization.
double sdc_residual(const Mat& sdc, const Vec& x, const Vec& delta_u_hat, const Mat& Bu);

struct GainSet {
  Mat K;    // m x n
  Mat K_r;  // m x p
  Mode mode_tag = Mode::Nominal;
  double pole_error = 0.0;  // worst pole distance of Psi + B K from eig(A_rm)
};

inline constexpr double kPoleMatchTolerance = 1e-6;

/// K_r = (B^T B)^{-1} B^T B_rm. Throws RankDeficient if B lacks full column rank.
Mat feedforward_gain(const Mat& B, const Mat& B_rm);

/// Places eig(Psi + B K) at eig(A_rm) and computes the static feedforward gain.
/// The pole match is verified to kPoleMatchTolerance (SolveFailed otherwise).
GainSet synthesize_gains(const Mat& Psi, const Mat& B, const Mat& A_rm, const Mat& B_rm,
                         Mode mode_tag = Mode::Nominal);

/// As above with a precomputed feedforward gain and reference pole set.
GainSet synthesize_gains(const Mat& Psi, const Mat& B, std::span<const Complex> ref_poles, const Mat& K_r,
                         Mode mode_tag);

/// u = K x + K_r r - delta_m_hat
Vec total_control(const GainSet& gains, const Vec& x, const Vec& r, const Vec& delta_m_hat);

struct TrackingBoundReport {
  double pre_switch = 0.0;   // (|B| xi_m + |B_u| xi_u) / lambda_min(Q)
  double post_switch = 0.0;  // |B| xi_m / lambda_min(Q)
  double lambda_min_q = 0.0;
  double lambda_max_p = 0.0;  // of the reference-model Lyapunov solution
};

/// Reference-tracking ultimate-bound estimates before and after the switch,
/// with operator 2-norms for |B| and |B_u|. Diagnostic only.
TrackingBoundReport condition1_check(const Mat& A_rm, const Mat& B, const Mat& Bu, double xi_m_bar,
                                     double xi_u_bar, const Mat& Q);

struct ModeCertificate {
  bool hurwitz = false;
  bool positive_definite = false;
  double min_eig_p = 0.0;
  double residual = 0.0;
  bool certified_by_first = false;  // A_i^T P_1 + P_1 A_i < 0
};

struct ModeLyapunovReport {
  std::vector<ModeCertificate> modes;
  bool all_pass = false;        // every mode has its own P > 0
  bool common_certified = false;  // P of the first mode works for all modes
};

ModeLyapunovReport verify_mode_lyapunov(std::span<const Mat> modes, const Mat& Q);

}  // namespace hmrac
