#include "qsd/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qsd {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_matrix: return "InvalidMatrix";
    case ErrorCode::not_psd: return "NotPsd";
    case ErrorCode::not_pure: return "NotPure";
    case ErrorCode::invalid_ensemble: return "InvalidEnsemble";
    case ErrorCode::invalid_alpha: return "InvalidAlpha";
    case ErrorCode::invalid_fidelity: return "InvalidFidelity";
    case ErrorCode::not_realizable_in_qubit: return "NotRealizableInQubit";
    case ErrorCode::wrong_dimension: return "WrongDimension";
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::invalid_support: return "InvalidSupport";
    case ErrorCode::invalid_weights: return "InvalidWeights";
    case ErrorCode::not_applicable: return "NotApplicable";
    case ErrorCode::degenerate_sqrt: return "DegenerateSqrt";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::io_error: return "IoError";
  }
  return "UnknownError";
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    fail(ErrorCode::invalid_matrix, "matrix is not square");
  if (!a.allFinite())
    fail(ErrorCode::invalid_matrix, "matrix has non-finite entries");
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index d) {
  return HermitianMatrix(ComplexMatrix::Zero(d, d));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

EigenSystem eig_hermitian(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.mat());
  if (es.info() != Eigen::Success)
    fail(ErrorCode::invalid_matrix, "eigendecomposition failed");
  EigenSystem sys;
  sys.eigenvalues = es.eigenvalues().reverse();
  sys.eigenvectors = es.eigenvectors().rowwise().reverse();
  return sys;
}

namespace {

double spectral_scale(const RealVector& descending) {
  if (descending.size() == 0) return 0.0;
  return std::max(std::abs(descending(0)),
                  std::abs(descending(descending.size() - 1)));
}

}  // namespace

bool is_psd(const HermitianMatrix& h, double tol) {
  if (tol < 0.0) fail(ErrorCode::invalid_input, "negative PSD tolerance");
  EigenSystem sys = eig_hermitian(h);
  if (sys.eigenvalues.size() == 0) return true;
  double scale = std::max(1.0, spectral_scale(sys.eigenvalues));
  return sys.eigenvalues(sys.eigenvalues.size() - 1) >= -tol * scale;
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.mat(),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

HermitianMatrix mat_sqrt_psd(const HermitianMatrix& h) {
  EigenSystem sys = eig_hermitian(h);
  const Eigen::Index d = h.dim();
  double scale = std::max(1.0, spectral_scale(sys.eigenvalues));
  double lmax = d > 0 ? std::max(sys.eigenvalues(0), 0.0) : 0.0;
  RealVector roots(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lam = sys.eigenvalues(i);
    if (lam < -kPsdTol * scale)
      fail(ErrorCode::not_psd, "matrix square root of a non-PSD matrix");
    if (lam < kEigClampRel * lmax) lam = 0.0;
    roots(i) = std::sqrt(lam);
  }
  ComplexMatrix r = sys.eigenvectors * roots.asDiagonal() *
                    sys.eigenvectors.adjoint();
  return HermitianMatrix(r);
}

HermitianMatrix pinv_sqrt(const HermitianMatrix& h, double rank_tol) {
  EigenSystem sys = eig_hermitian(h);
  const Eigen::Index d = h.dim();
  double scale = std::max(1.0, spectral_scale(sys.eigenvalues));
  double lmax = d > 0 ? std::max(sys.eigenvalues(0), 0.0) : 0.0;
  RealVector inv(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lam = sys.eigenvalues(i);
    if (lam < -kPsdTol * scale)
      fail(ErrorCode::not_psd, "pseudo-inverse square root of a non-PSD matrix");
    inv(i) = lam > rank_tol * lmax ? 1.0 / std::sqrt(lam) : 0.0;
  }
  ComplexMatrix r = sys.eigenvectors * inv.asDiagonal() *
                    sys.eigenvectors.adjoint();
  return HermitianMatrix(r);
}

HermitianMatrix range_projector(const HermitianMatrix& h, double rank_tol) {
  EigenSystem sys = eig_hermitian(h);
  const Eigen::Index d = h.dim();
  double lmax = d > 0 ? std::max(sys.eigenvalues(0), 0.0) : 0.0;
  RealVector gate(d);
  for (Eigen::Index i = 0; i < d; ++i)
    gate(i) = sys.eigenvalues(i) > rank_tol * lmax ? 1.0 : 0.0;
  ComplexMatrix p = sys.eigenvectors * gate.asDiagonal() *
                    sys.eigenvectors.adjoint();
  return HermitianMatrix(p);
}

double trace_norm(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    fail(ErrorCode::invalid_matrix, "trace norm of a non-square matrix");
  if (!a.allFinite())
    fail(ErrorCode::invalid_matrix, "trace norm of a non-finite matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

HermitianMatrix sqrt_2x2_levinger(const HermitianMatrix& s) {
  if (s.dim() != 2)
    fail(ErrorCode::wrong_dimension, "Levinger square root needs a 2x2 matrix");
  const ComplexMatrix& m = s.mat();
  if (m.norm() == 0.0) return HermitianMatrix::zero(2);
  double tau = m(0, 0).real() + m(1, 1).real();
  double delta = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
  double scale = std::max(1.0, tau);
  if (tau < -kPsdTol * scale || delta < -kPsdTol * scale * scale)
    fail(ErrorCode::not_psd, "Levinger square root of a non-PSD matrix");
  double root_det = std::sqrt(std::max(delta, 0.0));
  double t2 = tau + 2.0 * root_det;
  if (t2 <= 0.0)
    fail(ErrorCode::degenerate_sqrt, "degenerate 2x2 square root");
  double t = std::sqrt(t2);
  ComplexMatrix r = (m + root_det * ComplexMatrix::Identity(2, 2)) / t;
  return HermitianMatrix(r);
}

}  // namespace qsd
