#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

struct BoundEntry {
  double value = 0.0;
  bool applicable = false;
  std::string reason;  // why the entry is absent
};

// Every upper and lower bound the library implements, evaluated on one
// ensemble. Pruned entries need a support set.
struct BoundsReport {
  BoundEntry pgm_renes;
  BoundEntry pgm_renes_pruned;
  BoundEntry fidelity;
  BoundEntry fidelity_pruned;
  BoundEntry sqrt_sum;
  BoundEntry sqrt_sum_pruned;
  BoundEntry trace_norm;
  BoundEntry trace_norm_pruned;
  BoundEntry lower_sqrt_sum;
  int trace_norm_argmin = -1;

  // One "name,value,applicable" row per bound.
  std::string to_csv() const;
};

// sqrt((n-1)/n (p_pgm - 1/n)) + 1/n; tight given the PGM success.
double bound_renes(double p_pgm, int n);
double bound_renes_pruned(const Ensemble& e, const std::vector<int>& i_plus);

// 1 - sum_{i<j} F_ij^2 over unnormalized fidelities (pure ensembles).
double bound_fidelity(const Ensemble& e);
double bound_fidelity_pruned(const Ensemble& e,
                             const std::vector<int>& i_plus);

// tr sqrt(sum_i sigma~_i^2); mixed states allowed.
double bound_sqrt_sum(const Ensemble& e);
double bound_sqrt_sum_pruned(const Ensemble& e,
                             const std::vector<int>& i_plus);

// Square of bound_sqrt_sum, a lower bound on the optimum.
double lower_sqrt_sum(const Ensemble& e);

struct TraceNormBound {
  double value = 0.0;
  int argmin = -1;  // ties resolve to the smallest index
};

// 1/2 + 1/2 min_j { sum_i ||sigma~_i - sigma~_j||_1 - p_j (n - 2) }.
TraceNormBound bound_trace_norm(const Ensemble& e);

// Equiprobable refinement over i_plus united with the argmin index.
double bound_trace_norm_pruned(const Ensemble& e,
                               const std::vector<int>& i_plus, int j_hat);

BoundsReport bounds_report(
    const Ensemble& e,
    const std::optional<std::vector<int>>& i_plus = std::nullopt);

}  // namespace qsd
