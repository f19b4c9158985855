#define QSD_API __attribute__((visibility("default")))

#include "qsd.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "qsd/analytic.hpp"
#include "qsd/bounds.hpp"
#include "qsd/io.hpp"
#include "qsd/sampling.hpp"
#include "qsd/solver.hpp"
#include "qsd/support.hpp"

struct qsd_ensemble {
  qsd::Ensemble value;
};

struct qsd_result {
  qsd::SolveResult value;
};

namespace {

thread_local std::string g_last_error;

qsd_status map_code(qsd::ErrorCode code) {
  using qsd::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_matrix: return QSD_ERROR_INVALID_MATRIX;
    case ErrorCode::not_psd: return QSD_ERROR_NOT_PSD;
    case ErrorCode::not_pure: return QSD_ERROR_NOT_PURE;
    case ErrorCode::invalid_ensemble: return QSD_ERROR_INVALID_ENSEMBLE;
    case ErrorCode::invalid_alpha: return QSD_ERROR_INVALID_ALPHA;
    case ErrorCode::invalid_fidelity: return QSD_ERROR_INVALID_FIDELITY;
    case ErrorCode::not_realizable_in_qubit: return QSD_ERROR_NOT_REALIZABLE;
    case ErrorCode::wrong_dimension: return QSD_ERROR_WRONG_DIMENSION;
    case ErrorCode::invalid_input: return QSD_ERROR_INVALID_ARGUMENT;
    case ErrorCode::invalid_support: return QSD_ERROR_INVALID_SUPPORT;
    case ErrorCode::invalid_weights: return QSD_ERROR_INVALID_WEIGHTS;
    case ErrorCode::not_applicable: return QSD_ERROR_NOT_APPLICABLE;
    case ErrorCode::degenerate_sqrt: return QSD_ERROR_DEGENERATE_SQRT;
    case ErrorCode::parse_error: return QSD_ERROR_PARSE;
    case ErrorCode::io_error: return QSD_ERROR_IO;
  }
  return QSD_ERROR_INTERNAL;
}

template <typename Fn>
qsd_status guarded(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const qsd::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSD_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QSD_ERROR_INTERNAL;
  }
}

qsd_status require(bool ok, const char* message) {
  if (ok) return QSD_OK;
  g_last_error = message;
  return QSD_ERROR_INVALID_ARGUMENT;
}

void copy_matrix(const qsd::ComplexMatrix& m, double* out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      *out++ = m(r, c).real();
      *out++ = m(r, c).imag();
    }
}

std::vector<int> index_vector(const int* idx, int k) {
  return std::vector<int>(idx, idx + k);
}

}  // namespace

extern "C" {

const char* qsd_version(void) { return "1.0.0"; }

const char* qsd_status_name(qsd_status status) {
  switch (status) {
    case QSD_OK: return "ok";
    case QSD_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case QSD_ERROR_INVALID_MATRIX: return "invalid matrix";
    case QSD_ERROR_NOT_PSD: return "not positive semidefinite";
    case QSD_ERROR_NOT_PURE: return "state is not pure";
    case QSD_ERROR_INVALID_ENSEMBLE: return "invalid ensemble";
    case QSD_ERROR_INVALID_ALPHA: return "alpha out of range";
    case QSD_ERROR_INVALID_FIDELITY: return "fidelity out of range";
    case QSD_ERROR_NOT_REALIZABLE: return "not realizable in a qubit";
    case QSD_ERROR_WRONG_DIMENSION: return "wrong dimension";
    case QSD_ERROR_INVALID_SUPPORT: return "invalid support set";
    case QSD_ERROR_INVALID_WEIGHTS: return "invalid weights";
    case QSD_ERROR_NOT_APPLICABLE: return "bound not applicable";
    case QSD_ERROR_DEGENERATE_SQRT: return "degenerate square root";
    case QSD_ERROR_PARSE: return "parse error";
    case QSD_ERROR_IO: return "i/o error";
    case QSD_ERROR_NOT_CONVERGED: return "not converged";
    case QSD_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* qsd_last_error(void) { return g_last_error.c_str(); }

qsd_status qsd_ensemble_create(int dim, int count, const double* priors,
                               const double* states, qsd_ensemble** out) {
  if (qsd_status s = require(out && priors && states && dim >= 1 && count >= 1,
                             "null or non-positive arguments"))
    return s;
  return guarded([&] {
    std::vector<double> p(priors, priors + count);
    std::vector<qsd::DensityMatrix> sts;
    const double* cursor = states;
    for (int i = 0; i < count; ++i) {
      qsd::ComplexMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          m(r, c) = qsd::Complex(cursor[0], cursor[1]);
          cursor += 2;
        }
      double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (dev > 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff()))
        qsd::fail(qsd::ErrorCode::invalid_matrix,
                  "state " + std::to_string(i) + " is not Hermitian");
      sts.emplace_back(qsd::HermitianMatrix(m));
    }
    *out = new qsd_ensemble{qsd::Ensemble(std::move(p), std::move(sts))};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_create_pure_qubits(int count, const double* priors,
                                           const double* bloch,
                                           qsd_ensemble** out) {
  if (qsd_status s = require(out && priors && bloch && count >= 1,
                             "null or non-positive arguments"))
    return s;
  return guarded([&] {
    std::vector<double> p(priors, priors + count);
    std::vector<qsd::DensityMatrix> sts;
    for (int i = 0; i < count; ++i) {
      qsd::RealVector r(3);
      r << bloch[3 * i], bloch[3 * i + 1], bloch[3 * i + 2];
      double len = r.norm();
      if (len > 1.0 && len <= 1.0 + 1e-9) r /= len;
      sts.push_back(qsd::state_from_bloch(r, 2));
    }
    *out = new qsd_ensemble{qsd::Ensemble(std::move(p), std::move(sts))};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_equidistant_triple(double alpha, qsd_ensemble** out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = new qsd_ensemble{qsd::equidistant_triple(alpha)};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_mirror_symmetric(double p, double theta,
                                         qsd_ensemble** out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = new qsd_ensemble{qsd::mirror_symmetric(p, theta)};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_sample(int count, int dim, uint64_t seed,
                               uint64_t index, qsd_ensemble** out) {
  if (qsd_status s = require(out && count >= 1 && dim >= 2,
                             "null output or bad sizes"))
    return s;
  return guarded([&] {
    *out = new qsd_ensemble{qsd::sample_instance(count, dim, seed, index)};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_read(const char* path, qsd_ensemble** out) {
  if (qsd_status s = require(out && path, "null arguments")) return s;
  return guarded([&] {
    *out = new qsd_ensemble{qsd::read_ensemble_file(path)};
    return QSD_OK;
  });
}

qsd_status qsd_ensemble_write(const qsd_ensemble* e, const char* path) {
  if (qsd_status s = require(e && path, "null arguments")) return s;
  return guarded([&] {
    qsd::write_ensemble_file(path, e->value);
    return QSD_OK;
  });
}

void qsd_ensemble_free(qsd_ensemble* e) { delete e; }

int qsd_ensemble_dim(const qsd_ensemble* e) {
  return e ? static_cast<int>(e->value.dim()) : 0;
}

int qsd_ensemble_count(const qsd_ensemble* e) {
  return e ? e->value.size() : 0;
}

double qsd_ensemble_prior(const qsd_ensemble* e, int i) {
  if (!e || i < 0 || i >= e->value.size()) return -1.0;
  return e->value.prior(i);
}

qsd_status qsd_ensemble_state(const qsd_ensemble* e, int i, double* out) {
  if (qsd_status s = require(e && out && i >= 0 && i < e->value.size(),
                             "null arguments or index out of range"))
    return s;
  copy_matrix(e->value.state(i).mat(), out);
  return QSD_OK;
}

qsd_status qsd_ensemble_fidelity(const qsd_ensemble* e, int i, int j,
                                 int normalized, double* out) {
  if (qsd_status s =
          require(e && out && i >= 0 && j >= 0 && i < e->value.size() &&
                      j < e->value.size(),
                  "null arguments or index out of range"))
    return s;
  return guarded([&] {
    qsd::FidelityMatrix f = qsd::fidelity_matrix(e->value);
    *out = normalized ? f.normalized(i, j) : f.unnormalized(i, j);
    return QSD_OK;
  });
}

qsd_status qsd_solve(const qsd_ensemble* e, double tol, long max_iter,
                     qsd_result** out) {
  if (qsd_status s = require(e && out, "null arguments")) return s;
  return guarded([&] {
    qsd::SolveOptions opts;
    if (tol > 0.0) opts.tol = tol;
    if (max_iter > 0) opts.max_iter = max_iter;
    qsd::SolveResult res = qsd::solve_optimal(e->value, opts);
    bool converged = res.converged;
    *out = new qsd_result{std::move(res)};
    if (!converged) {
      g_last_error = "gap above tolerance after the iteration limit";
      return QSD_ERROR_NOT_CONVERGED;
    }
    return QSD_OK;
  });
}

void qsd_result_free(qsd_result* r) { delete r; }

double qsd_result_success_probability(const qsd_result* r) {
  return r ? r->value.p_success : -1.0;
}

double qsd_result_upper_bound(const qsd_result* r) {
  return r ? r->value.upper_bound : -1.0;
}

double qsd_result_gap(const qsd_result* r) { return r ? r->value.gap : -1.0; }

long qsd_result_iterations(const qsd_result* r) {
  return r ? r->value.iterations : -1;
}

int qsd_result_converged(const qsd_result* r) {
  return r ? (r->value.converged ? 1 : 0) : 0;
}

qsd_status qsd_result_operator(const qsd_result* r, int i, double* out) {
  if (qsd_status s =
          require(r && out && i >= 0 &&
                      i < static_cast<int>(r->value.povm.operators.size()),
                  "null arguments or index out of range"))
    return s;
  copy_matrix(r->value.povm.operators[static_cast<size_t>(i)].mat(), out);
  return QSD_OK;
}

qsd_status qsd_result_support(const qsd_result* r, double trace_tol,
                              int* members, int* count) {
  if (qsd_status s = require(r && members && count, "null arguments"))
    return s;
  return guarded([&] {
    std::vector<int> sup = qsd::extract_support(
        r->value.povm, trace_tol > 0.0 ? trace_tol : qsd::kSupportTraceTol);
    std::copy(sup.begin(), sup.end(), members);
    *count = static_cast<int>(sup.size());
    return QSD_OK;
  });
}

int qsd_result_ambiguous_count(const qsd_result* r) {
  if (!r) return -1;
  return static_cast<int>(qsd::ambiguous_support(r->value.povm).size());
}

qsd_status qsd_pgm_success(const qsd_ensemble* e, double* out) {
  if (qsd_status s = require(e && out, "null arguments")) return s;
  return guarded([&] {
    *out = qsd::pgm_success(e->value);
    return QSD_OK;
  });
}

qsd_status qsd_pgm_plus_success(const qsd_ensemble* e, const int* i_plus,
                                int k, double* out) {
  if (qsd_status s = require(e && out && i_plus && k >= 1, "null arguments"))
    return s;
  return guarded([&] {
    *out = qsd::pgm_plus_success(e->value, index_vector(i_plus, k));
    return QSD_OK;
  });
}

qsd_status qsd_helstrom_two(const qsd_ensemble* e, double* out) {
  if (qsd_status s = require(e && out, "null arguments")) return s;
  return guarded([&] {
    *out = qsd::helstrom_two(e->value);
    return QSD_OK;
  });
}

qsd_status qsd_equidistant_popt(double alpha, double* out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = qsd::equidistant_popt(alpha);
    return QSD_OK;
  });
}

qsd_status qsd_mirror_pgm_success(double p, double theta, double* out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = qsd::mirror_pgm_success(p, theta);
    return QSD_OK;
  });
}

qsd_status qsd_mirror_region_condition(double p, double theta, int* out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = qsd::mirror_region_condition(p, theta) ? 1 : 0;
    return QSD_OK;
  });
}

qsd_status qsd_bound_renes(double p_pgm, int n, double* out) {
  if (qsd_status s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    *out = qsd::bound_renes(p_pgm, n);
    return QSD_OK;
  });
}

qsd_status qsd_bound_renes_pruned(const qsd_ensemble* e, const int* i_plus,
                                  int k, double* out) {
  if (qsd_status s = require(e && out && i_plus && k >= 1, "null arguments"))
    return s;
  return guarded([&] {
    *out = qsd::bound_renes_pruned(e->value, index_vector(i_plus, k));
    return QSD_OK;
  });
}

qsd_status qsd_bounds(const qsd_ensemble* e, const int* i_plus, int k,
                      qsd_bounds_report* out) {
  if (qsd_status s = require(e && out && (i_plus != nullptr || k == 0),
                             "null arguments"))
    return s;
  return guarded([&] {
    std::optional<std::vector<int>> support;
    if (i_plus && k > 0) support = index_vector(i_plus, k);
    qsd::BoundsReport r = qsd::bounds_report(e->value, support);
    std::memset(out, 0, sizeof(*out));
    auto put = [](const qsd::BoundEntry& entry, double& value, int& ok) {
      value = entry.applicable ? entry.value : 0.0;
      ok = entry.applicable ? 1 : 0;
    };
    put(r.pgm_renes, out->pgm_renes, out->pgm_renes_ok);
    put(r.pgm_renes_pruned, out->pgm_renes_pruned, out->pgm_renes_pruned_ok);
    put(r.fidelity, out->fidelity, out->fidelity_ok);
    put(r.fidelity_pruned, out->fidelity_pruned, out->fidelity_pruned_ok);
    put(r.sqrt_sum, out->sqrt_sum, out->sqrt_sum_ok);
    put(r.sqrt_sum_pruned, out->sqrt_sum_pruned, out->sqrt_sum_pruned_ok);
    put(r.trace_norm, out->trace_norm, out->trace_norm_ok);
    put(r.trace_norm_pruned, out->trace_norm_pruned,
        out->trace_norm_pruned_ok);
    put(r.lower_sqrt_sum, out->lower_sqrt_sum, out->lower_sqrt_sum_ok);
    out->trace_norm_argmin = r.trace_norm_argmin;
    return QSD_OK;
  });
}

qsd_status qsd_support_subset(const qsd_ensemble* e, int* members,
                              int* count) {
  if (qsd_status s = require(e && members && count, "null arguments"))
    return s;
  return guarded([&] {
    std::vector<int> sub = qsd::subset_of_support(e->value);
    std::copy(sub.begin(), sub.end(), members);
    *count = static_cast<int>(sub.size());
    return QSD_OK;
  });
}

qsd_status qsd_support_superset(const qsd_ensemble* e, const double* weights,
                                int* members, int* count) {
  if (qsd_status s = require(e && members && count, "null arguments"))
    return s;
  return guarded([&] {
    std::optional<std::vector<double>> w;
    if (weights)
      w = std::vector<double>(weights, weights + e->value.size() - 1);
    std::vector<int> sup = qsd::superset_of_support(e->value, w);
    std::copy(sup.begin(), sup.end(), members);
    *count = static_cast<int>(sup.size());
    return QSD_OK;
  });
}

qsd_status qsd_coincidence_experiment(long instances, int count, int dim,
                                      uint64_t seed, int threads,
                                      qsd_coincidence_stats* out) {
  if (qsd_status s = require(out && instances >= 1 && count >= 1 && dim >= 2,
                             "null output or bad sizes"))
    return s;
  return guarded([&] {
    qsd::CoincidenceStats st =
        qsd::coincidence_experiment(instances, count, dim, seed, threads);
    out->instances = st.instances;
    out->subset_match_rate = st.subset_match.rate;
    out->subset_match_lo = st.subset_match.lo;
    out->subset_match_hi = st.subset_match.hi;
    out->superset_match_rate = st.superset_match.rate;
    out->superset_match_lo = st.superset_match.lo;
    out->superset_match_hi = st.superset_match.hi;
    out->coincide_rate = st.coincide.rate;
    out->coincide_lo = st.coincide.lo;
    out->coincide_hi = st.coincide.hi;
    out->ambiguous_instances = st.ambiguous_instances;
    out->soundness_violations = st.soundness_violations;
    return QSD_OK;
  });
}

}  // extern "C"
