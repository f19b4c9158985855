#include "qsd/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qsd {

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0)
    fail(ErrorCode::invalid_matrix, "empty density matrix");
  if (!is_psd(m_, kPsdTol))
    fail(ErrorCode::not_psd, "density matrix is not PSD");
  double tr = m_.mat().trace().real();
  if (std::abs(tr - 1.0) > kPsdTol)
    fail(ErrorCode::invalid_matrix,
         "density matrix trace " + std::to_string(tr) + " is not 1");
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  double n = psi.norm();
  if (n == 0.0 || !psi.allFinite())
    fail(ErrorCode::invalid_input, "pure state from a zero or non-finite vector");
  ComplexVector u = psi / n;
  return DensityMatrix(HermitianMatrix(u * u.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  return DensityMatrix(HermitianMatrix(
      ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

bool DensityMatrix::is_pure(double tol) const {
  EigenSystem sys = eig_hermitian(m_);
  return sys.eigenvalues.size() < 2 || sys.eigenvalues(1) <= tol;
}

Ensemble::Ensemble(std::vector<double> priors,
                   std::vector<DensityMatrix> states)
    : priors_(std::move(priors)), states_(std::move(states)) {
  if (priors_.empty() || priors_.size() != states_.size())
    fail(ErrorCode::invalid_ensemble, "priors and states count mismatch");
  double sum = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0))
      fail(ErrorCode::invalid_ensemble, "negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kPsdTol)
    fail(ErrorCode::invalid_ensemble,
         "priors sum to " + std::to_string(sum) + ", expected 1");
  Eigen::Index d = states_.front().dim();
  for (const DensityMatrix& s : states_)
    if (s.dim() != d)
      fail(ErrorCode::invalid_ensemble, "states have mixed dimensions");
}

std::vector<ComplexMatrix> gell_mann_basis(int d) {
  if (d < 2) fail(ErrorCode::wrong_dimension, "operator basis needs dim >= 2");
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<size_t>(d) * d - 1);
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(d, d);
      b(j, k) = 1.0;
      b(k, j) = 1.0;
      basis.push_back(b);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = -i_unit;
      g(k, j) = i_unit;
      basis.push_back(g);
    }
  for (int j = 1; j < d; ++j) {
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    double norm = std::sqrt(2.0 / (j * (j + 1.0)));
    for (int k = 0; k < j; ++k) a(k, k) = norm;
    a(j, j) = -j * norm;
    basis.push_back(a);
  }
  return basis;
}

ComplexVector pure_state_vector(const DensityMatrix& rho) {
  EigenSystem sys = eig_hermitian(rho.matrix());
  if (sys.eigenvalues.size() > 1 && sys.eigenvalues(1) > kPsdTol)
    fail(ErrorCode::not_pure, "state is not pure within tolerance");
  ComplexVector v = sys.eigenvectors.col(0);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    double mag = std::abs(v(k));
    if (mag > 1e-10) {
      v *= std::conj(v(k)) / mag;
      break;
    }
  }
  return v;
}

namespace {

// Canonical phase gauge: states only determine the Gram matrix up to a
// diagonal phase conjugation, so walk a spanning forest of the nonzero
// off-diagonal entries and rotate each new vertex to make the connecting
// entry real positive. The result depends only on the density matrices,
// not on the factorization, which makes reconstruction round-trips exact.
GramMatrix canonical_gauge(const ComplexMatrix& g) {
  const Eigen::Index n = g.rows();
  constexpr double edge_tol = 1e-10;
  std::vector<Complex> phase(static_cast<size_t>(n), Complex(0, 0));
  std::vector<Eigen::Index> queue;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (phase[static_cast<size_t>(root)] != Complex(0, 0)) continue;
    phase[static_cast<size_t>(root)] = 1.0;
    queue.assign(1, root);
    while (!queue.empty()) {
      Eigen::Index i = queue.back();
      queue.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (phase[static_cast<size_t>(j)] != Complex(0, 0)) continue;
        // entry as seen after gauging column i but before gauging j
        Complex entry = std::conj(phase[static_cast<size_t>(i)]) * g(i, j);
        if (std::abs(entry) <= edge_tol) continue;
        phase[static_cast<size_t>(j)] = std::conj(entry) / std::abs(entry);
        queue.push_back(j);
      }
    }
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = std::conj(phase[static_cast<size_t>(i)]) * g(i, j) *
                  phase[static_cast<size_t>(j)];
  return HermitianMatrix(out).mat();
}

}  // namespace

GramMatrix gram(const Ensemble& e) {
  const int n = e.size();
  ComplexMatrix psi(e.dim(), n);
  for (int i = 0; i < n; ++i)
    psi.col(i) = std::sqrt(e.prior(i)) * pure_state_vector(e.state(i));
  ComplexMatrix g = psi.adjoint() * psi;
  return canonical_gauge(g);
}

FidelityMatrix fidelity_matrix(const Ensemble& e) {
  const int n = e.size();
  std::vector<ComplexVector> vecs;
  vecs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vecs.push_back(pure_state_vector(e.state(i)));
  FidelityMatrix f;
  f.normalized = Eigen::MatrixXd::Identity(n, n);
  f.unnormalized = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    f.unnormalized(i, i) = e.prior(i);
    for (int j = i + 1; j < n; ++j) {
      double fh = std::abs(vecs[static_cast<size_t>(i)]
                               .dot(vecs[static_cast<size_t>(j)]));
      f.normalized(i, j) = f.normalized(j, i) = fh;
      double fu = std::sqrt(e.prior(i) * e.prior(j)) * fh;
      f.unnormalized(i, j) = f.unnormalized(j, i) = fu;
    }
  }
  return f;
}

namespace {

double bloch_scale(int d) { return std::sqrt(d * (d - 1.0) / 2.0); }

}  // namespace

RealVector bloch_from_state(const DensityMatrix& rho) {
  const int d = static_cast<int>(rho.dim());
  std::vector<ComplexMatrix> basis = gell_mann_basis(d);
  // r_k = tr(rho l_k) d / (2 K) with K = sqrt(d(d-1)/2)
  double factor = d / (2.0 * bloch_scale(d));
  RealVector r(basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    r(static_cast<Eigen::Index>(k)) =
        factor * (rho.mat() * basis[k]).trace().real();
  return r;
}

DensityMatrix state_from_bloch(const RealVector& r, int d) {
  if (d < 2) fail(ErrorCode::wrong_dimension, "Bloch state needs dim >= 2");
  if (r.size() != static_cast<Eigen::Index>(d) * d - 1)
    fail(ErrorCode::invalid_input, "Bloch vector has wrong length");
  if (d == 2 && r.norm() > 1.0 + kPsdTol)
    fail(ErrorCode::not_psd, "qubit Bloch vector longer than 1");
  std::vector<ComplexMatrix> basis = gell_mann_basis(d);
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  double scale = bloch_scale(d);
  for (size_t k = 0; k < basis.size(); ++k)
    m += scale * r(static_cast<Eigen::Index>(k)) * basis[k];
  m /= d;
  return DensityMatrix(HermitianMatrix(m));
}

double bloch_inner_from_fidelity(double fhat, int d) {
  if (d < 2) fail(ErrorCode::wrong_dimension, "Bloch inner needs dim >= 2");
  if (fhat < -1e-12 || fhat > 1.0 + 1e-12)
    fail(ErrorCode::invalid_fidelity,
         "fidelity " + std::to_string(fhat) + " outside [0, 1]");
  fhat = std::clamp(fhat, 0.0, 1.0);
  return (d * fhat * fhat - 1.0) / (d - 1.0);
}

Ensemble ensemble_from_gram(const GramMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0)
    fail(ErrorCode::invalid_input, "Gram matrix must be square and nonempty");
  HermitianMatrix gh(g);
  EigenSystem sys = eig_hermitian(gh);
  const Eigen::Index n = g.rows();
  double lmax = std::max(sys.eigenvalues(0), 0.0);
  if (sys.eigenvalues(n - 1) < -kPsdTol * std::max(1.0, lmax))
    fail(ErrorCode::not_psd, "Gram matrix is not PSD");
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sys.eigenvalues(i) > kRankTolDefault * lmax) ++rank;
  if (rank == 0) fail(ErrorCode::not_psd, "Gram matrix is zero");
  // Rows of sqrt(Lambda) V^dagger realize G = Psi^dagger Psi in dim rank(G).
  ComplexMatrix psi(rank, n);
  for (Eigen::Index r = 0; r < rank; ++r)
    psi.row(r) = std::sqrt(sys.eigenvalues(r)) *
                 sys.eigenvectors.col(r).adjoint();
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
  for (Eigen::Index i = 0; i < n; ++i) {
    priors.push_back(std::max(gh.mat()(i, i).real(), 0.0));
    ComplexVector v = psi.col(i);
    if (v.squaredNorm() <= 1e-14) {
      v = ComplexVector::Zero(rank);
      v(0) = 1.0;
    }
    states.push_back(DensityMatrix::pure(v));
  }
  return Ensemble(std::move(priors), std::move(states));
}

Ensemble qubit_ensemble_from_fidelity(const FidelityMatrix& f) {
  const Eigen::Index n = f.normalized.rows();
  if (n == 0 || f.normalized.cols() != n || f.unnormalized.rows() != n ||
      f.unnormalized.cols() != n)
    fail(ErrorCode::invalid_input, "malformed fidelity matrix");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = bloch_inner_from_fidelity(f.normalized(i, j), 2);
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd lam = es.eigenvalues().reverse();
  Eigen::MatrixXd q = es.eigenvectors().rowwise().reverse();
  double tol = 1e-8 * std::max(1.0, lam(0));
  if (lam(n - 1) < -tol)
    fail(ErrorCode::not_realizable_in_qubit,
         "Bloch Gram matrix is not PSD");
  for (Eigen::Index i = 3; i < n; ++i)
    if (lam(i) > tol)
      fail(ErrorCode::not_realizable_in_qubit,
           "Bloch Gram matrix has rank > 3");
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector r = RealVector::Zero(3);
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(3, n); ++k)
      r(k) = std::sqrt(std::max(lam(k), 0.0)) * q(i, k);
    double len = r.norm();
    if (len > 1.0) r /= len;
    priors.push_back(f.unnormalized(i, i));
    states.push_back(state_from_bloch(r, 2));
  }
  return Ensemble(std::move(priors), std::move(states));
}

Ensemble equidistant_triple(double alpha) {
  if (alpha < 0.5 - 1e-12 || alpha > 1.0 + 1e-12)
    fail(ErrorCode::invalid_alpha,
         "alpha " + std::to_string(alpha) + " outside [1/2, 1]");
  alpha = std::clamp(alpha, 0.5, 1.0);
  // cos(t) = (2a^4 - 3a^2 + 1) / (2a^2 (a^2 - 1)) = 1 - 1/(2a^2)
  double ct = 1.0 - 1.0 / (2.0 * alpha * alpha);
  double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  ComplexVector p1(2), p2(2), p3(2);
  p1 << 1.0, 0.0;
  p2 << alpha, beta;
  p3 << alpha, Complex(ct, st) * beta;
  std::vector<double> priors(3, 1.0 / 3.0);
  std::vector<DensityMatrix> states{DensityMatrix::pure(p1),
                                    DensityMatrix::pure(p2),
                                    DensityMatrix::pure(p3)};
  return Ensemble(std::move(priors), std::move(states));
}

Ensemble mirror_symmetric(double p, double theta) {
  if (p < -1e-12 || p > 0.5 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror prior outside [0, 1/2]");
  if (theta < -1e-12 || theta > M_PI_2 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror angle outside [0, pi/2]");
  p = std::clamp(p, 0.0, 0.5);
  double ct = std::cos(theta), st = std::sin(theta);
  ComplexVector p1(2), p2(2), p3(2);
  p1 << ct, st;
  p2 << ct, -st;
  p3 << 1.0, 0.0;
  std::vector<double> priors{p, p, 1.0 - 2.0 * p};
  std::vector<DensityMatrix> states{DensityMatrix::pure(p1),
                                    DensityMatrix::pure(p2),
                                    DensityMatrix::pure(p3)};
  return Ensemble(std::move(priors), std::move(states));
}

DensityMatrix reflect_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    fail(ErrorCode::wrong_dimension, "reflection is defined for qubits only");
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  ComplexMatrix r = x * rho.mat().transpose() * x;
  return DensityMatrix(HermitianMatrix(r));
}

Ensemble pruned_ensemble(const Ensemble& e, const std::vector<int>& i_plus) {
  double pp = plus_weight(e, i_plus);
  if (pp <= 0.0)
    fail(ErrorCode::invalid_support, "pruned ensemble has zero total prior");
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
  for (int i : i_plus) {
    priors.push_back(e.prior(i) / pp);
    states.push_back(e.state(i));
  }
  return Ensemble(std::move(priors), std::move(states));
}

double plus_weight(const Ensemble& e, const std::vector<int>& i_plus) {
  if (i_plus.empty())
    fail(ErrorCode::invalid_support, "empty support set");
  std::set<int> seen;
  double pp = 0.0;
  for (int i : i_plus) {
    if (i < 0 || i >= e.size())
      fail(ErrorCode::invalid_support, "support index out of range");
    if (!seen.insert(i).second)
      fail(ErrorCode::invalid_support, "duplicate support index");
    pp += e.prior(i);
  }
  return pp;
}

}  // namespace qsd
