#include "hmrac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hmrac/error.hpp"

namespace hmrac {

namespace {

int rank_from_singular_values(const Vec& sv) {
  if (sv.size() == 0) return 0;
  const double smax = sv.maxCoeff();
  if (!(smax > 0.0)) return 0;
  const double tol = kRankTolerance * smax;
  return static_cast<int>((sv.array() > tol).count());
}

}  // namespace

bool all_finite(const Mat& M) { return M.allFinite(); }

RangeNullSplit range_null_split(const Mat& B) {
  if (B.rows() < 1) throw Error(ErrorCode::InvalidArgument, "range_null_split: empty input matrix");
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullU);
  const int r = rank_from_singular_values(svd.singularValues());
  if (r == 0) throw Error(ErrorCode::NoRangeSpace, "input matrix is numerically zero");
  const Mat& U = svd.matrixU();
  const auto n = U.cols();
  return {U.leftCols(r), U.rightCols(n - r)};
}

int numerical_rank(const Mat& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  return rank_from_singular_values(svd.singularValues());
}

Mat pinv(const Mat& M) {
  if (M.size() == 0) return Mat::Zero(M.cols(), M.rows());
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double smax = sv.size() ? sv.maxCoeff() : 0.0;
  Vec inv = Vec::Zero(sv.size());
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > kRankTolerance * smax) inv(i) = 1.0 / sv(i);
    }
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Mat solve_lyapunov(const Mat& A, const Mat& Q) {
  const auto n = A.rows();
  if (A.cols() != n || Q.rows() != n || Q.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "solve_lyapunov: dimension mismatch");
  }
  if (!is_hurwitz(A)) throw Error(ErrorCode::NotHurwitz, "Lyapunov equation needs a Hurwitz matrix");

  const Mat I = Mat::Identity(n, n);
  const Mat At = A.transpose();
  Mat kron(n * n, n * n);
  // column-major vec: vec(A^T P) = (I kron A^T) vec(P), vec(P A) = (A^T kron I) vec(P)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) = I(i, j) * At + At(i, j) * I;
    }
  }
  const Vec rhs = -Eigen::Map<const Vec>(Q.data(), n * n);
  Eigen::FullPivLU<Mat> lu(kron);
  if (!lu.isInvertible()) throw Error(ErrorCode::SolveFailed, "singular Kronecker system");
  const Vec vecP = lu.solve(rhs);
  if (!vecP.allFinite()) throw Error(ErrorCode::SolveFailed, "non-finite Lyapunov solution");
  Mat P = Eigen::Map<const Mat>(vecP.data(), n, n);
  return 0.5 * (P + P.transpose());
}

double lyapunov_residual(const Mat& A, const Mat& P, const Mat& Q) {
  return (A.transpose() * P + P * A + Q).norm();
}

std::vector<double> poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex(1.0, 0.0)};
  double scale = 1.0;
  for (const Complex& root : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * root;
    }
    c = std::move(next);
    scale = std::max(scale, std::abs(root));
  }
  std::vector<double> out(c.size());
  const double tol = 1e-9 * std::pow(scale, static_cast<double>(roots.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i].imag()) > tol) {
      throw Error(ErrorCode::InvalidArgument, "pole set is not closed under conjugation");
    }
    out[i] = c[i].real();
  }
  return out;
}

Controllability ctrb_rank(const Mat& A, const Mat& B) {
  const auto n = A.rows();
  const auto m = B.cols();
  if (A.cols() != n || B.rows() != n) throw Error(ErrorCode::InvalidArgument, "ctrb_rank: dimension mismatch");
  Controllability out;
  out.matrix.resize(n, n * m);
  if (n == 0) return out;
  out.matrix.leftCols(m) = B;
  for (Eigen::Index i = 1; i < n; ++i) {
    out.matrix.middleCols(i * m, m) = A * out.matrix.middleCols((i - 1) * m, m);
  }
  out.rank = numerical_rank(out.matrix);
  return out;
}

Vec place_poles_si(const Mat& A, const Mat& B, std::span<const Complex> poles) {
  const auto n = A.rows();
  if (B.cols() != 1) throw Error(ErrorCode::Unsupported, "pole placement supports a single input only");
  if (A.cols() != n || B.rows() != n) throw Error(ErrorCode::InvalidArgument, "place_poles_si: dimension mismatch");
  if (static_cast<Eigen::Index>(poles.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "place_poles_si: need exactly n poles");
  }
  const Controllability ctrb = ctrb_rank(A, B);
  if (ctrb.rank < n) throw Error(ErrorCode::Uncontrollable, "(A, b) is not controllable");

  const std::vector<double> coeffs = poly_from_roots(poles);
  // Horner evaluation of the desired characteristic polynomial at A.
  Mat pA = Mat::Identity(n, n) * coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    pA = pA * A + coeffs[i] * Mat::Identity(n, n);
  }
  Vec en = Vec::Zero(n);
  en(n - 1) = 1.0;
  // row = e_n^T C^{-1}, obtained from C^T row^T = e_n
  const Vec row = ctrb.matrix.transpose().fullPivLu().solve(en);
  const Vec k = -(row.transpose() * pA).transpose();
  if (!k.allFinite()) throw Error(ErrorCode::NumericalFault, "pole placement produced non-finite gains");
  return k;
}

std::vector<Complex> eigenvalues(const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::InvalidArgument, "eigenvalues: matrix not square");
  if (A.size() == 0) return {};
  if (!A.allFinite()) throw Error(ErrorCode::EigFailed, "matrix has non-finite entries");
  Eigen::EigenSolver<Mat> es(A, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigFailed, "eigenvalue iteration did not converge");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double max_real_part(const Mat& A) {
  double out = -std::numeric_limits<double>::infinity();
  for (const Complex& l : eigenvalues(A)) out = std::max(out, l.real());
  return out;
}

double min_real_part(const Mat& A) {
  double out = std::numeric_limits<double>::infinity();
  for (const Complex& l : eigenvalues(A)) out = std::min(out, l.real());
  return out;
}

bool is_hurwitz(const Mat& A) { return A.size() > 0 && max_real_part(A) < 0.0; }

double pole_mismatch(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;

  auto worst_of = [&](const std::vector<std::size_t>& perm) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    return worst;
  };

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 8) {
    double best_total = std::numeric_limits<double>::infinity();
    double best_worst = best_total;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += std::abs(a[i] - b[perm[i]]);
      if (total < best_total) {
        best_total = total;
        best_worst = worst_of(perm);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best_worst;
  }

  // Greedy pairing for large sets.
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (best == n || std::abs(a[i] - b[j]) < std::abs(a[i] - b[best])) best = j;
    }
    used[best] = true;
    perm[i] = best;
  }
  return worst_of(perm);
}

bool poles_match(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  return pole_mismatch(a, b) <= tol;
}

}  // namespace hmrac
