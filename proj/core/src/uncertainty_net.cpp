#include "hmrac/uncertainty_net.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "hmrac/error.hpp"

namespace hmrac {

RbfNet::RbfNet(Mat centers, double bandwidth, double gamma, double w_max)
    : centers_(std::move(centers)), bandwidth_(bandwidth), gamma_(gamma), w_max_(w_max) {
  if (centers_.rows() < 1 || centers_.cols() < 1) throw Error(ErrorCode::InvalidArgument, "RBF net needs k >= 1 centers");
  if (!(bandwidth_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "RBF bandwidth must be positive");
  if (!(gamma_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "adaptation rate must be positive");
  if (!(w_max_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "projection bound must be positive");
  if (!centers_.allFinite()) throw Error(ErrorCode::InvalidArgument, "RBF centers must be finite");
  weights_ = Mat::Zero(centers_.rows() + 1, centers_.cols());
}

RbfNet RbfNet::from_config(const RbfConfig& cfg, int state_dim) {
  if (cfg.num_centers < 1) throw Error(ErrorCode::InvalidArgument, "RBF net needs k >= 1 centers");
  if (!(cfg.range_hi >= cfg.range_lo)) throw Error(ErrorCode::InvalidArgument, "RBF center range is empty");
  std::mt19937_64 gen(cfg.seed);
  Mat centers(cfg.num_centers, state_dim);
  for (int i = 0; i < cfg.num_centers; ++i) {
    for (int j = 0; j < state_dim; ++j) {
      // 53 high bits -> [0, 1); distribution objects are not portable.
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      centers(i, j) = cfg.range_lo + (cfg.range_hi - cfg.range_lo) * u;
    }
  }
  return RbfNet(std::move(centers), cfg.bandwidth, cfg.gamma, cfg.w_max);
}

void RbfNet::set_weights(const Mat& w) {
  if (w.rows() != weights_.rows() || w.cols() != weights_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix shape mismatch");
  }
  if (!w.allFinite()) throw Error(ErrorCode::NumericalFault, "non-finite weights");
  const double norm = w.norm();
  weights_ = norm > w_max_ ? Mat(w * (w_max_ / norm)) : w;
}

Vec RbfNet::phi(const Vec& x) const {
  const auto k = centers_.rows();
  Vec out(k + 1);
  out(0) = 1.0;
  const double inv_two_bw2 = 1.0 / (2.0 * bandwidth_ * bandwidth_);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double d2 = (x - centers_.row(i).transpose()).squaredNorm();
    out(i + 1) = std::exp(-d2 * inv_two_bw2);
  }
  return out;
}

Vec RbfNet::predict_total(const Vec& x) const { return weights_.transpose() * phi(x); }

Mat raw_weight_derivative(const Vec& phi, const Vec& e, const Mat& P, double gamma) {
  return gamma * phi * (e.transpose() * P);
}

Mat project_derivative(const Mat& W, const Mat& D, double w_max) {
  const double norm2 = W.squaredNorm();
  const double radial = (W.array() * D.array()).sum();
  if (norm2 < w_max * w_max || radial <= 0.0) return D;
  return D - (radial / norm2) * W;
}

RbfNet RbfNet::update_weights(const Vec& e, const Mat& P, const Vec& x, double dt) const {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "update_weights: dt must be positive");
  if (!e.allFinite() || !x.allFinite() || !P.allFinite()) {
    throw Error(ErrorCode::NumericalFault, "non-finite input to weight update");
  }
  const Mat D = raw_weight_derivative(phi(x), e, P, gamma_);
  Mat next = weights_ + dt * project_derivative(weights_, D, w_max_);
  if (!next.allFinite()) throw Error(ErrorCode::NumericalFault, "weight update produced non-finite values");
  // A finite Euler step along the tangent still leaves the ball by O(dt^2);
  // pull it back onto the sphere.
  const double norm = next.norm();
  if (norm > w_max_) next *= w_max_ / norm;
  RbfNet out = *this;
  out.weights_ = std::move(next);
  return out;
}

SubspaceDecomposition make_decomposition(const Mat& B, const Mat& Bu) {
  const auto n = B.rows();
  if (Bu.rows() != n) throw Error(ErrorCode::InvalidArgument, "B and B_u must have the same row count");
  if (Bu.cols() > 0 && (Bu.transpose() * B).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::NotComplementary, "B_u^T B != 0");
  }
  if (numerical_rank(B) != B.cols()) throw Error(ErrorCode::RankDeficient, "B is not full column rank");
  if (Bu.cols() > 0 && numerical_rank(Bu) != Bu.cols()) {
    throw Error(ErrorCode::RankDeficient, "B_u is not full column rank");
  }

  const RangeNullSplit split = range_null_split(B);
  SubspaceDecomposition d;
  d.R = split.range;
  d.N = split.null;
  d.alpha = d.R.transpose() * B;
  d.beta = d.N.transpose() * Bu;
  d.omega.resize(n, n);
  d.omega << d.R, d.N;
  d.alpha_pinv = pinv(d.alpha);
  d.beta_pinv = pinv(d.beta);
  if ((d.N * d.beta - Bu).norm() > 1e-9 * std::max(1.0, Bu.norm())) {
    throw Error(ErrorCode::NotComplementary, "B_u does not lie in the left null space of B");
  }
  return d;
}

UncertaintySplit split_estimate(const Vec& total, const SubspaceDecomposition& d) {
  const int r = d.rank();
  UncertaintySplit s;
  s.total = total;
  s.xi = d.omega.transpose() * total;
  const auto n = s.xi.size();
  s.matched = d.alpha_pinv * s.xi.head(r);
  s.unmatched = d.beta_pinv * s.xi.tail(n - r);
  return s;
}

}  // namespace hmrac
