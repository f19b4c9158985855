#pragma once

#include <vector>

#include "qsd/matrix.hpp"

namespace qsd {

// Unit-trace PSD matrix (trace and positivity validated at construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix m);

  // |psi><psi| for a nonzero vector; psi is normalized first.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index d);

  Eigen::Index dim() const { return m_.dim(); }
  const HermitianMatrix& matrix() const { return m_; }
  const ComplexMatrix& mat() const { return m_.mat(); }

  bool is_pure(double tol = kPsdTol) const;

 private:
  HermitianMatrix m_;
};

// Problem instance: states sigma_i with priors p_i >= 0 summing to one.
class Ensemble {
 public:
  Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states);

  Eigen::Index dim() const { return states_.front().dim(); }
  int size() const { return static_cast<int>(states_.size()); }
  double prior(int i) const { return priors_[static_cast<size_t>(i)]; }
  const DensityMatrix& state(int i) const {
    return states_[static_cast<size_t>(i)];
  }
  // Prior-weighted state p_i sigma_i.
  ComplexMatrix weighted(int i) const {
    return prior(i) * states_[static_cast<size_t>(i)].mat();
  }

 private:
  std::vector<double> priors_;
  std::vector<DensityMatrix> states_;
};

// Pairwise inner products of the prior-weighted pure-state vectors,
// G_ij = sqrt(p_i p_j) <psi_i|psi_j>; the diagonal carries the priors.
using GramMatrix = ComplexMatrix;

struct FidelityMatrix {
  Eigen::MatrixXd unnormalized;  // F_ij = sqrt(p_i p_j) |<psi_i|psi_j>|
  Eigen::MatrixXd normalized;    // Fhat_ij = |<psi_i|psi_j>|
};

// Traceless Hermitian operator basis with tr(l_i l_j) = 2 delta_ij, ordered
// as all symmetric beta_{jk}, all antisymmetric gamma_{jk} (lexicographic
// j < k), then the diagonal alpha_j. For d = 2 this is (X, Y, Z).
std::vector<ComplexMatrix> gell_mann_basis(int d);

// Rank-1 factor of a pure state, phase fixed so that the first coordinate of
// nonnegligible magnitude is real positive. Throws ErrorCode::not_pure.
ComplexVector pure_state_vector(const DensityMatrix& rho);

GramMatrix gram(const Ensemble& e);
FidelityMatrix fidelity_matrix(const Ensemble& e);

// Coordinates r with rho = (I + sqrt(d(d-1)/2) sum_k r_k l_k) / d; pure
// states have unit norm.
RealVector bloch_from_state(const DensityMatrix& rho);
DensityMatrix state_from_bloch(const RealVector& r, int d);

// (d fhat^2 - 1) / (d - 1), the Bloch inner product fixed by a normalized
// fidelity.
double bloch_inner_from_fidelity(double fhat, int d);

// Pure ensemble realizing a PSD Gram matrix, in dimension rank(G).
Ensemble ensemble_from_gram(const GramMatrix& g);

// Qubit ensemble realizing a fidelity matrix; requires the Bloch Gram matrix
// 2 Fhat^2 - 1 to be PSD of rank <= 3.
Ensemble qubit_ensemble_from_fidelity(const FidelityMatrix& f);

// Equiprobable qubit triple with all pairwise fidelities equal to alpha,
// alpha in [1/2, 1].
Ensemble equidistant_triple(double alpha);

// Priors (p, p, 1-2p) on cos(t)|0> +- sin(t)|1> and |0>.
Ensemble mirror_symmetric(double p, double theta);

// X rho^T X: negates the Bloch z-coordinate of a qubit state.
DensityMatrix reflect_qubit(const DensityMatrix& rho);

// Sub-ensemble on i_plus with priors renormalized by p_plus.
Ensemble pruned_ensemble(const Ensemble& e, const std::vector<int>& i_plus);
double plus_weight(const Ensemble& e, const std::vector<int>& i_plus);

}  // namespace qsd
