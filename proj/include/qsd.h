/*
 * C API for the qsd library: minimum-error discrimination of quantum state
 * ensembles with certified optimality, closed-form measurements, upper and
 * lower bounds on the optimal success probability, and support
 * identification without semidefinite programming.
 *
 * Conventions:
 *   - Matrices are passed as row-major arrays of interleaved (re, im)
 *     doubles, 2*dim*dim values per dim x dim matrix.
 *   - Index sets are 0-based.
 *   - Functions return QSD_OK on success; on failure qsd_last_error() holds
 *     a thread-local message. Output handles must be released with the
 *     matching *_free function.
 */
#ifndef QSD_H
#define QSD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef QSD_API
#if defined(_WIN32)
#define QSD_API __declspec(dllimport)
#else
#define QSD_API __attribute__((visibility("default")))
#endif
#endif

typedef enum qsd_status {
  QSD_OK = 0,
  QSD_ERROR_INVALID_ARGUMENT = 1,
  QSD_ERROR_INVALID_MATRIX = 2,
  QSD_ERROR_NOT_PSD = 3,
  QSD_ERROR_NOT_PURE = 4,
  QSD_ERROR_INVALID_ENSEMBLE = 5,
  QSD_ERROR_INVALID_ALPHA = 6,
  QSD_ERROR_INVALID_FIDELITY = 7,
  QSD_ERROR_NOT_REALIZABLE = 8,
  QSD_ERROR_WRONG_DIMENSION = 9,
  QSD_ERROR_INVALID_SUPPORT = 10,
  QSD_ERROR_INVALID_WEIGHTS = 11,
  QSD_ERROR_NOT_APPLICABLE = 12,
  QSD_ERROR_DEGENERATE_SQRT = 13,
  QSD_ERROR_PARSE = 14,
  QSD_ERROR_IO = 15,
  QSD_ERROR_NOT_CONVERGED = 16,
  QSD_ERROR_INTERNAL = 17
} qsd_status;

typedef struct qsd_ensemble qsd_ensemble;
typedef struct qsd_result qsd_result;

QSD_API const char* qsd_version(void);
QSD_API const char* qsd_status_name(qsd_status status);
/* Message of the most recent failure on this thread. */
QSD_API const char* qsd_last_error(void);

/* --- ensembles ------------------------------------------------------- */

/* states: count matrices, each 2*dim*dim doubles. */
QSD_API qsd_status qsd_ensemble_create(int dim, int count,
                                       const double* priors,
                                       const double* states,
                                       qsd_ensemble** out);
/* bloch: count unit 3-vectors (x, y, z), one pure qubit state each. */
QSD_API qsd_status qsd_ensemble_create_pure_qubits(int count,
                                                   const double* priors,
                                                   const double* bloch,
                                                   qsd_ensemble** out);
QSD_API qsd_status qsd_ensemble_equidistant_triple(double alpha,
                                                   qsd_ensemble** out);
QSD_API qsd_status qsd_ensemble_mirror_symmetric(double p, double theta,
                                                 qsd_ensemble** out);
/* Instance `index` of the seeded stream: Dir(1,..,1) priors,
 * Hilbert-Schmidt states. */
QSD_API qsd_status qsd_ensemble_sample(int count, int dim, uint64_t seed,
                                       uint64_t index, qsd_ensemble** out);
QSD_API qsd_status qsd_ensemble_read(const char* path, qsd_ensemble** out);
QSD_API qsd_status qsd_ensemble_write(const qsd_ensemble* e,
                                      const char* path);
QSD_API void qsd_ensemble_free(qsd_ensemble* e);

QSD_API int qsd_ensemble_dim(const qsd_ensemble* e);
QSD_API int qsd_ensemble_count(const qsd_ensemble* e);
QSD_API double qsd_ensemble_prior(const qsd_ensemble* e, int i);
/* out: 2*dim*dim doubles. */
QSD_API qsd_status qsd_ensemble_state(const qsd_ensemble* e, int i,
                                      double* out);
/* Pairwise fidelity |<psi_i|psi_j>| (normalized != 0) or
 * sqrt(p_i p_j) |<psi_i|psi_j>| (normalized == 0). Pure states only. */
QSD_API qsd_status qsd_ensemble_fidelity(const qsd_ensemble* e, int i, int j,
                                         int normalized, double* out);

/* --- solver ----------------------------------------------------------- */

/* Optimal measurement with a certified duality gap. On
 * QSD_ERROR_NOT_CONVERGED the handle is still produced and carries the
 * certified gap reached. tol <= 0 or max_iter <= 0 select the defaults
 * (1e-8, 100000). */
QSD_API qsd_status qsd_solve(const qsd_ensemble* e, double tol,
                             long max_iter, qsd_result** out);
QSD_API void qsd_result_free(qsd_result* r);

QSD_API double qsd_result_success_probability(const qsd_result* r);
QSD_API double qsd_result_upper_bound(const qsd_result* r);
QSD_API double qsd_result_gap(const qsd_result* r);
QSD_API long qsd_result_iterations(const qsd_result* r);
QSD_API int qsd_result_converged(const qsd_result* r);
/* out: 2*dim*dim doubles for measurement operator i. */
QSD_API qsd_status qsd_result_operator(const qsd_result* r, int i,
                                       double* out);
/* Indices with tr(E_i) > trace_tol (pass 0 for the default 1e-6).
 * members must hold count ints. */
QSD_API qsd_status qsd_result_support(const qsd_result* r, double trace_tol,
                                      int* members, int* count);
/* Number of operators with trace inside the ambiguous band [1e-8, 1e-4]. */
QSD_API int qsd_result_ambiguous_count(const qsd_result* r);

/* --- closed forms ------------------------------------------------------ */

QSD_API qsd_status qsd_pgm_success(const qsd_ensemble* e, double* out);
QSD_API qsd_status qsd_pgm_plus_success(const qsd_ensemble* e,
                                        const int* i_plus, int k,
                                        double* out);
QSD_API qsd_status qsd_helstrom_two(const qsd_ensemble* e, double* out);
QSD_API qsd_status qsd_equidistant_popt(double alpha, double* out);
QSD_API qsd_status qsd_mirror_pgm_success(double p, double theta,
                                          double* out);
QSD_API qsd_status qsd_mirror_region_condition(double p, double theta,
                                               int* out);

/* --- bounds ------------------------------------------------------------ */

QSD_API qsd_status qsd_bound_renes(double p_pgm, int n, double* out);
QSD_API qsd_status qsd_bound_renes_pruned(const qsd_ensemble* e,
                                          const int* i_plus, int k,
                                          double* out);

typedef struct qsd_bounds_report {
  double pgm_renes, pgm_renes_pruned;
  double fidelity, fidelity_pruned;
  double sqrt_sum, sqrt_sum_pruned;
  double trace_norm, trace_norm_pruned;
  double lower_sqrt_sum;
  /* 1 when the matching value is defined for this input. */
  int pgm_renes_ok, pgm_renes_pruned_ok;
  int fidelity_ok, fidelity_pruned_ok;
  int sqrt_sum_ok, sqrt_sum_pruned_ok;
  int trace_norm_ok, trace_norm_pruned_ok;
  int lower_sqrt_sum_ok;
  int trace_norm_argmin;
} qsd_bounds_report;

/* Pass i_plus = NULL (k = 0) to skip the pruned variants. */
QSD_API qsd_status qsd_bounds(const qsd_ensemble* e, const int* i_plus,
                              int k, qsd_bounds_report* out);

/* --- support ------------------------------------------------------------ */

QSD_API qsd_status qsd_support_subset(const qsd_ensemble* e, int* members,
                                      int* count);
/* weights: n-1 nonnegative values summing to 1, or NULL for 1/(n-1) each. */
QSD_API qsd_status qsd_support_superset(const qsd_ensemble* e,
                                        const double* weights, int* members,
                                        int* count);

typedef struct qsd_coincidence_stats {
  long instances;
  double subset_match_rate, subset_match_lo, subset_match_hi;
  double superset_match_rate, superset_match_lo, superset_match_hi;
  double coincide_rate, coincide_lo, coincide_hi;
  long ambiguous_instances;
  long soundness_violations;
} qsd_coincidence_stats;

/* Monte Carlo comparison of the certified subset/superset against the
 * solver's support over `instances` sampled problems; 99% confidence
 * intervals. threads <= 0 uses all hardware threads. */
QSD_API qsd_status qsd_coincidence_experiment(long instances, int count,
                                              int dim, uint64_t seed,
                                              int threads,
                                              qsd_coincidence_stats* out);

#ifdef __cplusplus
}
#endif

#endif /* QSD_H */
