#pragma once

#include <cstdint>

#include "hmrac/linalg.hpp"

namespace hmrac {

struct RbfConfig {
  int num_centers = 10;
  double range_lo = -1.0;
  double range_hi = 1.0;
  double bandwidth = 0.25;
  double gamma = 0.05;   // adaptation rate
  double w_max = 100.0;  // Frobenius-ball projection radius
  std::uint64_t seed = 42;
};

// Gaussian RBF network with a bias feature. Weights are (k+1) x n; row 0 is
// the bias weight. The Frobenius norm of the weights never exceeds w_max.
class RbfNet {
 public:
  RbfNet(Mat centers, double bandwidth, double gamma, double w_max);

  /// Centers drawn uniformly from [range_lo, range_hi]^n with a seeded
  /// mt19937_64 (bit-reproducible across standard libraries).
  static RbfNet from_config(const RbfConfig& cfg, int state_dim);

  int num_centers() const { return static_cast<int>(centers_.rows()); }
  int state_dim() const { return static_cast<int>(centers_.cols()); }
  const Mat& centers() const { return centers_; }
  double bandwidth() const { return bandwidth_; }
  double gamma() const { return gamma_; }
  double w_max() const { return w_max_; }
  const Mat& weights() const { return weights_; }

  void set_weights(const Mat& w);

  /// phi(x) = [1, exp(-|x - c_i|^2 / (2 bw^2))...]
  Vec phi(const Vec& x) const;

  /// Total-uncertainty estimate W^T phi(x).
  Vec predict_total(const Vec& x) const;

  /// One forward-Euler step of W' = Gamma * Proj(W, phi(x) e^T P).
  RbfNet update_weights(const Vec& e, const Mat& P, const Vec& x, double dt) const;

 private:
  Mat centers_;  // k x n
  double bandwidth_;
  double gamma_;
  double w_max_;
  Mat weights_;
};

/// Raw adaptation direction Gamma * phi e^T P, shape (k+1) x n.
Mat raw_weight_derivative(const Vec& phi, const Vec& e, const Mat& P, double gamma);

/// Norm-ball projection: D passes through inside the ball or when it points
/// inward; on or outside the boundary the radial component is removed.
Mat project_derivative(const Mat& W, const Mat& D, double w_max);

struct SubspaceDecomposition {
  Mat R;           // n x r, orthonormal basis of range(B)
  Mat N;           // n x (n-r), orthonormal basis of null(B^T)
  Mat alpha;       // r x m,  B  = R alpha
  Mat beta;        // (n-r) x m2, B_u = N beta
  Mat omega;       // [R N], orthogonal
  Mat alpha_pinv;  // m x r
  Mat beta_pinv;   // m2 x (n-r)

  int rank() const { return static_cast<int>(R.cols()); }
};

/// Builds the range/null decomposition of (B, B_u). B_u must be orthogonal to
/// B to 1e-9 (NotComplementary) and both must have full column rank (RankDeficient).
SubspaceDecomposition make_decomposition(const Mat& B, const Mat& Bu);

struct UncertaintySplit {
  Vec total;      // W^T phi(x)
  Vec xi;         // omega^T total
  Vec matched;    // alpha^+ xi[0..r)
  Vec unmatched;  // beta^+ xi[r..n)
};

UncertaintySplit split_estimate(const Vec& total, const SubspaceDecomposition& d);

}  // namespace hmrac
