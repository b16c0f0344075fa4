#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hmrac {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Complex = std::complex<double>;

// Singular values below kRankTolerance * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-10;

// Orthonormal bases of range(B) and of the left null space null(B^T).
struct RangeNullSplit {
  Mat range;  // n x r
  Mat null;   // n x (n - r)
};

/// Splits R^n into range(B) and its orthogonal complement using the SVD of B.
/// Throws NoRangeSpace when B has no nonzero singular value.
RangeNullSplit range_null_split(const Mat& B);

/// Numerical rank with the relative tolerance kRankTolerance.
int numerical_rank(const Mat& M);

/// Moore-Penrose pseudo-inverse; singular values below the rank tolerance are
/// dropped, so the zero matrix maps to the (transposed) zero matrix.
Mat pinv(const Mat& M);

/// Solves A^T P + P A = -Q by vectorizing into (I kron A^T + A^T kron I) vec(P) = -vec(Q).
/// Requires A Hurwitz (NotHurwitz otherwise). The returned P is symmetrized.
Mat solve_lyapunov(const Mat& A, const Mat& Q);

/// Frobenius norm of A^T P + P A + Q.
double lyapunov_residual(const Mat& A, const Mat& P, const Mat& Q);

/// Single-input pole placement by Ackermann's formula. Returns k (length n) so
/// that eig(A + B k^T) equals `poles`. B must have exactly one column.
Vec place_poles_si(const Mat& A, const Mat& B, std::span<const Complex> poles);

struct Controllability {
  Mat matrix;  // [B | AB | ... | A^{n-1} B]
  int rank = 0;
};

Controllability ctrb_rank(const Mat& A, const Mat& B);

/// Eigenvalues of a real square matrix. Throws EigFailed on non-convergence.
std::vector<Complex> eigenvalues(const Mat& A);

double max_real_part(const Mat& A);
double min_real_part(const Mat& A);
bool is_hurwitz(const Mat& A);

/// Monic real polynomial coefficients (highest power first) with the given roots.
/// Complex roots must appear in conjugate pairs.
std::vector<double> poly_from_roots(std::span<const Complex> roots);

/// Smallest total pairing distance between two equal-size multisets, reported
/// as the worst single-pair distance of the optimal pairing.
double pole_mismatch(std::span<const Complex> a, std::span<const Complex> b);

bool poles_match(std::span<const Complex> a, std::span<const Complex> b, double tol);

bool all_finite(const Mat& M);

inline Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace hmrac
