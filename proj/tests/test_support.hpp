#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hmrac/linalg.hpp"

namespace hmrac::testing {

inline Mat random_matrix(std::mt19937_64& gen, int rows, int cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Mat M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = nd(gen);
  return M;
}

inline Vec random_vector(std::mt19937_64& gen, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = ud(gen);
  return v;
}

inline Mat random_orthogonal(std::mt19937_64& gen, int n) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(gen, n, n));
  return qr.householderQ() * Mat::Identity(n, n);
}

/// Random matrix shifted so every eigenvalue has real part <= -margin.
inline Mat random_hurwitz(std::mt19937_64& gen, int n, double margin = 0.1) {
  std::uniform_real_distribution<double> extra(0.0, 1.0);
  const Mat M = random_matrix(gen, n, n);
  const double shift = max_real_part(M) + margin + extra(gen);
  return M - shift * Mat::Identity(n, n);
}

/// Dense Gaussian elimination with partial pivoting, written out by hand so it
/// shares no code with the library's solver.
inline Vec gauss_solve(Mat M, Vec b) {
  const int n = static_cast<int>(M.rows());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(M(r, col)) > std::abs(M(piv, col))) piv = r;
    if (piv != col) {
      M.row(col).swap(M.row(piv));
      std::swap(b(col), b(piv));
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = M(r, col) / M(col, col);
      for (int c = col; c < n; ++c) M(r, c) -= f * M(col, c);
      b(r) -= f * b(col);
    }
  }
  Vec x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b(r);
    for (int c = r + 1; c < n; ++c) s -= M(r, c) * x(c);
    x(r) = s / M(r, r);
  }
  return x;
}

/// Lyapunov oracle: builds the n^2 x n^2 system entry by entry from
/// (A^T P + P A)_{ij} = sum_k A_ki P_kj + P_ik A_kj and solves it by elimination.
inline Mat lyapunov_oracle(const Mat& A, const Mat& Q) {
  const int n = static_cast<int>(A.rows());
  const int N = n * n;
  Mat K = Mat::Zero(N, N);
  Vec rhs(N);
  auto idx = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int row = idx(i, j);
      for (int k = 0; k < n; ++k) {
        K(row, idx(k, j)) += A(k, i);
        K(row, idx(i, k)) += A(k, j);
      }
      rhs(row) = -Q(i, j);
    }
  }
  const Vec p = gauss_solve(K, rhs);
  Mat P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P(i, j) = p(idx(i, j));
  return P;
}

/// Stable pole set of size n: real poles and conjugate pairs mixed at random.
inline std::vector<Complex> random_stable_poles(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> re(-4.0, -0.5);
  std::uniform_real_distribution<double> im(0.2, 2.0);
  std::bernoulli_distribution pair(0.4);
  std::vector<Complex> poles;
  while (static_cast<int>(poles.size()) < n) {
    if (static_cast<int>(poles.size()) + 2 <= n && pair(gen)) {
      const double a = re(gen), b = im(gen);
      poles.emplace_back(a, b);
      poles.emplace_back(a, -b);
    } else {
      poles.emplace_back(re(gen), 0.0);
    }
  }
  return poles;
}

}  // namespace hmrac::testing
