#include "qsd/solver.hpp"

#include <algorithm>
#include <cmath>

#include "qsd/analytic.hpp"

namespace qsd {

namespace {

// Relative rank cutoff for the iteration's pseudo-inverse.
constexpr double kIterRankTol = 1e-12;
// Mixing weight for a singular-supported PGM start.
constexpr double kStartMix = 1e-3;

ComplexMatrix hermitized(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

double success_from_weighted(const std::vector<ComplexMatrix>& sig,
                             const std::vector<ComplexMatrix>& ops) {
  double p = 0.0;
  for (size_t i = 0; i < sig.size(); ++i)
    p += (sig[i] * ops[i]).trace().real();
  return p;
}

// pinv_sqrt specialized to the solver loop (no PSD re-validation; the
// iterates are PSD by construction and only carry rounding jitter).
ComplexMatrix fast_pinv_sqrt(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::Index d = h.rows();
  double lmax = std::max(es.eigenvalues()(d - 1), 0.0);
  RealVector inv(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lam = es.eigenvalues()(i);
    inv(i) = lam > kIterRankTol * lmax ? 1.0 / std::sqrt(lam) : 0.0;
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double certificate(const std::vector<ComplexMatrix>& sig,
                   const std::vector<ComplexMatrix>& ops, double* p_out) {
  const Eigen::Index d = sig.front().rows();
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (size_t i = 0; i < sig.size(); ++i) z += sig[i] * ops[i];
  ComplexMatrix gamma = hermitized(z);
  double c = 0.0;
  for (const ComplexMatrix& s : sig) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gamma - s,
                                                    Eigen::EigenvaluesOnly);
    c = std::max(c, -es.eigenvalues()(0));
  }
  double p = gamma.trace().real();
  if (p_out) *p_out = p;
  return std::min(p + d * c, 1.0);
}

}  // namespace

PovmValidation validate_povm(const Povm& m, double tol) {
  PovmValidation v;
  if (m.operators.empty()) {
    v.message = "POVM has no operators";
    return v;
  }
  ComplexMatrix sum = ComplexMatrix::Zero(m.dim, m.dim);
  for (size_t i = 0; i < m.operators.size(); ++i) {
    const HermitianMatrix& op = m.operators[i];
    if (op.dim() != m.dim) {
      v.message = "operator " + std::to_string(i) + " has wrong dimension";
      return v;
    }
    if (!is_psd(op, tol)) {
      v.message = "operator " + std::to_string(i) + " is not PSD";
      return v;
    }
    sum += op.mat();
  }
  double dev = (sum - ComplexMatrix::Identity(m.dim, m.dim))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > tol) {
    v.message = "operators sum to identity only within " + std::to_string(dev);
    return v;
  }
  v.ok = true;
  return v;
}

double success_probability(const Ensemble& e, const Povm& m) {
  if (static_cast<int>(m.operators.size()) != e.size())
    fail(ErrorCode::invalid_input, "POVM size does not match ensemble");
  if (m.dim != e.dim())
    fail(ErrorCode::invalid_input, "POVM dimension does not match ensemble");
  double p = 0.0;
  for (int i = 0; i < e.size(); ++i)
    p += (e.weighted(i) * m.operators[static_cast<size_t>(i)].mat())
             .trace()
             .real();
  if (p < 0.0 && p >= -1e-12) p = 0.0;
  if (p > 1.0 && p <= 1.0 + 1e-12) p = 1.0;
  return p;
}

double certified_upper_bound(const Ensemble& e, const Povm& m) {
  if (static_cast<int>(m.operators.size()) != e.size())
    fail(ErrorCode::invalid_input, "POVM size does not match ensemble");
  std::vector<ComplexMatrix> sig, ops;
  for (int i = 0; i < e.size(); ++i) {
    sig.push_back(e.weighted(i));
    ops.push_back(m.operators[static_cast<size_t>(i)].mat());
  }
  return certificate(sig, ops, nullptr);
}

SolveResult solve_optimal(const Ensemble& e, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) fail(ErrorCode::invalid_input, "tolerance must be > 0");
  const int n = e.size();
  const Eigen::Index d = e.dim();

  std::vector<ComplexMatrix> sig;
  sig.reserve(static_cast<size_t>(n));
  ComplexMatrix s_total = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    sig.push_back(e.weighted(i));
    s_total += sig.back();
  }

  Povm start = pgm(e);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<size_t>(n));
  for (const HermitianMatrix& op : start.operators) ops.push_back(op.mat());

  // A rank-deficient ensemble average leaves the PGM supported on a proper
  // subspace; a slightly mixed start keeps every operator strictly positive.
  {
    EigenSystem sys = eig_hermitian(HermitianMatrix(s_total));
    double lmax = std::max(sys.eigenvalues(0), 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (sys.eigenvalues(i) > kIterRankTol * lmax) ++rank;
    if (rank < d)
      for (ComplexMatrix& op : ops)
        op = (1.0 - kStartMix) * op +
             (kStartMix / n) * ComplexMatrix::Identity(d, d);
  }

  SolveResult res;
  double p = success_from_weighted(sig, ops);
  double ub = 1.0;
  long it = 0;
  for (; it < opts.max_iter; ++it) {
    ub = certificate(sig, ops, &p);
    if (ub - p <= opts.tol) {
      res.converged = true;
      break;
    }
    ComplexMatrix lambda = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i)
      lambda += sig[static_cast<size_t>(i)] * ops[static_cast<size_t>(i)] *
                sig[static_cast<size_t>(i)];
    ComplexMatrix x = fast_pinv_sqrt(hermitized(lambda));
    for (int i = 0; i < n; ++i) {
      size_t k = static_cast<size_t>(i);
      ops[k] = hermitized(x * sig[k] * ops[k] * sig[k] * x);
    }
    p = success_from_weighted(sig, ops);
    if (opts.observer) opts.observer(it + 1, p);
  }
  if (!res.converged) ub = certificate(sig, ops, &p);

  // Complete on the orthogonal complement of the iterates' joint range; the
  // states carry no weight there, so the certificate and p are unaffected.
  // The deficit goes to the largest-trace operator: vanishing operators keep
  // a vanishing trace, which is what support extraction thresholds on.
  ComplexMatrix deficit = ComplexMatrix::Identity(d, d);
  for (const ComplexMatrix& op : ops) deficit -= op;
  size_t heaviest = 0;
  for (size_t i = 1; i < ops.size(); ++i)
    if (ops[i].trace().real() > ops[heaviest].trace().real()) heaviest = i;
  ops[heaviest] = hermitized(ops[heaviest] + deficit);

  res.povm.dim = d;
  for (const ComplexMatrix& op : ops)
    res.povm.operators.emplace_back(op);
  res.p_success = std::clamp(p, 0.0, 1.0);
  res.upper_bound = std::max(ub, res.p_success);
  res.gap = res.upper_bound - res.p_success;
  res.iterations = it;
  return res;
}

}  // namespace qsd
