#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qsd/error.hpp"

namespace qsd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerance for positive-semidefiniteness checks.
inline constexpr double kPsdTol = 1e-9;
// Eigenvalues below this fraction of the largest one are treated as zero
// inside PSD matrix functions; sampled density matrices carry rounding jitter.
inline constexpr double kEigClampRel = 1e-12;
// Default relative rank cutoff for pseudo-inverses; pure-state Gram matrices
// are exactly rank-deficient.
inline constexpr double kRankTolDefault = 1e-10;

// Dense complex Hermitian matrix. The stored entries satisfy
// m(j,k) == conj(m(k,j)) exactly: construction averages the input with its
// adjoint, which also zeroes imaginary parts on the diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Throws ErrorCode::invalid_matrix for non-square or non-finite input.
  explicit HermitianMatrix(const ComplexMatrix& a);

  static HermitianMatrix zero(Eigen::Index d);
  static HermitianMatrix identity(Eigen::Index d);

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& mat() const { return m_; }

 private:
  ComplexMatrix m_;
};

// Spectral decomposition of a Hermitian matrix, eigenvalues sorted
// descending, eigenvector columns orthonormal and matching by index.
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

EigenSystem eig_hermitian(const HermitianMatrix& h);

// True iff the smallest eigenvalue is >= -tol * max(1, spectral norm).
bool is_psd(const HermitianMatrix& h, double tol = kPsdTol);

double min_eigenvalue(const HermitianMatrix& h);

// PSD square root via the spectral decomposition. Small negative eigenvalues
// (within kPsdTol of zero, relative) are clamped; larger ones raise
// ErrorCode::not_psd.
HermitianMatrix mat_sqrt_psd(const HermitianMatrix& h);

// Moore-Penrose style inverse square root: eigenvalues above
// rank_tol * lambda_max map to lambda^{-1/2}, the rest to zero.
HermitianMatrix pinv_sqrt(const HermitianMatrix& h,
                          double rank_tol = kRankTolDefault);

// Orthogonal projector onto the range of a PSD matrix.
HermitianMatrix range_projector(const HermitianMatrix& h,
                                double rank_tol = kRankTolDefault);

// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

// Closed-form square root of a 2x2 PSD matrix: (S + sqrt(det) I) / t with
// t = sqrt(trace + 2 sqrt(det)). The zero matrix maps to itself; a vanishing
// denominator on nonzero input raises ErrorCode::degenerate_sqrt.
HermitianMatrix sqrt_2x2_levinger(const HermitianMatrix& s);

}  // namespace qsd
