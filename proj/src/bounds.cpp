#include "qsd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "qsd/analytic.hpp"

namespace qsd {

namespace {

// Negative radicands within this slack of zero clamp to zero; anything
// larger is a caller error.
constexpr double kRadicandSlack = 1e-12;

bool is_equiprobable(const Ensemble& e, double tol = 1e-9) {
  for (int i = 0; i < e.size(); ++i)
    if (std::abs(e.prior(i) - 1.0 / e.size()) > tol) return false;
  return true;
}

// All pruned variants follow one route: apply the base bound to the
// renormalized sub-ensemble and scale back by p_plus; the equiprobable
// closed forms are special cases of this composition. A support set of
// total prior zero gives the limit value 0.
template <typename Bound>
double pruned_via_relation(const Ensemble& e, const std::vector<int>& i_plus,
                           Bound&& base) {
  double pp = plus_weight(e, i_plus);
  if (pp == 0.0) return 0.0;
  return pp * base(pruned_ensemble(e, i_plus));
}

ComplexMatrix weighted_square_sum(const Ensemble& e,
                                  const std::vector<int>& idx) {
  ComplexMatrix s = ComplexMatrix::Zero(e.dim(), e.dim());
  for (int i : idx) {
    ComplexMatrix w = e.weighted(i);
    s += w * w;
  }
  return s;
}

std::vector<int> all_indices(const Ensemble& e) {
  std::vector<int> idx(static_cast<size_t>(e.size()));
  for (int i = 0; i < e.size(); ++i) idx[static_cast<size_t>(i)] = i;
  return idx;
}

}  // namespace

double bound_renes(double p_pgm, int n) {
  if (n < 1) fail(ErrorCode::invalid_input, "bound needs n >= 1");
  if (p_pgm > 1.0 + 1e-9)
    fail(ErrorCode::invalid_input, "PGM success probability above 1");
  double radicand = (n - 1.0) / n * (p_pgm - 1.0 / n);
  if (radicand < -kRadicandSlack)
    fail(ErrorCode::invalid_input,
         "PGM success probability below 1/n: negative radicand");
  return std::sqrt(std::max(radicand, 0.0)) + 1.0 / n;
}

double bound_renes_pruned(const Ensemble& e, const std::vector<int>& i_plus) {
  return pruned_via_relation(e, i_plus, [&](const Ensemble& sub) {
    return bound_renes(pgm_success(sub), sub.size());
  });
}

double bound_fidelity(const Ensemble& e) {
  FidelityMatrix f = fidelity_matrix(e);
  double sum = 0.0;
  for (int i = 0; i < e.size(); ++i)
    for (int j = i + 1; j < e.size(); ++j)
      sum += f.unnormalized(i, j) * f.unnormalized(i, j);
  return 1.0 - sum;
}

double bound_fidelity_pruned(const Ensemble& e,
                             const std::vector<int>& i_plus) {
  return pruned_via_relation(e, i_plus, bound_fidelity);
}

double bound_sqrt_sum(const Ensemble& e) {
  HermitianMatrix s(weighted_square_sum(e, all_indices(e)));
  return mat_sqrt_psd(s).mat().trace().real();
}

double bound_sqrt_sum_pruned(const Ensemble& e,
                             const std::vector<int>& i_plus) {
  return pruned_via_relation(e, i_plus, bound_sqrt_sum);
}

double lower_sqrt_sum(const Ensemble& e) {
  double t = bound_sqrt_sum(e);
  return t * t;
}

TraceNormBound bound_trace_norm(const Ensemble& e) {
  const int n = e.size();
  TraceNormBound best;
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != j) sum += trace_norm(e.weighted(i) - e.weighted(j));
    double candidate = sum - e.prior(j) * (n - 2.0);
    if (best.argmin < 0 || candidate < best.value) {
      best.value = candidate;
      best.argmin = j;
    }
  }
  best.value = 0.5 + 0.5 * best.value;
  return best;
}

double bound_trace_norm_pruned(const Ensemble& e,
                               const std::vector<int>& i_plus, int j_hat) {
  if (!is_equiprobable(e))
    fail(ErrorCode::not_applicable,
         "pruned trace-norm bound applies to equiprobable ensembles only");
  if (j_hat < 0 || j_hat >= e.size())
    fail(ErrorCode::invalid_input, "argmin index out of range");
  std::set<int> joined(i_plus.begin(), i_plus.end());
  joined.insert(j_hat);
  std::vector<int> idx(joined.begin(), joined.end());
  return pruned_via_relation(
      e, idx, [](const Ensemble& sub) { return bound_trace_norm(sub).value; });
}

BoundsReport bounds_report(const Ensemble& e,
                           const std::optional<std::vector<int>>& i_plus) {
  BoundsReport r;
  auto eval = [](BoundEntry& entry, auto&& fn) {
    try {
      entry.value = fn();
      entry.applicable = true;
    } catch (const Error& err) {
      entry.applicable = false;
      entry.reason = err.what();
    }
  };
  auto needs_support = [&](BoundEntry& entry, auto&& fn) {
    if (!i_plus) {
      entry.applicable = false;
      entry.reason = "requires a support set";
      return;
    }
    eval(entry, fn);
  };

  eval(r.pgm_renes, [&] { return bound_renes(pgm_success(e), e.size()); });
  eval(r.fidelity, [&] { return bound_fidelity(e); });
  eval(r.sqrt_sum, [&] { return bound_sqrt_sum(e); });
  eval(r.lower_sqrt_sum, [&] { return lower_sqrt_sum(e); });
  TraceNormBound tn = bound_trace_norm(e);
  r.trace_norm.value = tn.value;
  r.trace_norm.applicable = true;
  r.trace_norm_argmin = tn.argmin;

  needs_support(r.pgm_renes_pruned,
                [&] { return bound_renes_pruned(e, *i_plus); });
  needs_support(r.fidelity_pruned,
                [&] { return bound_fidelity_pruned(e, *i_plus); });
  needs_support(r.sqrt_sum_pruned,
                [&] { return bound_sqrt_sum_pruned(e, *i_plus); });
  needs_support(r.trace_norm_pruned,
                [&] { return bound_trace_norm_pruned(e, *i_plus, tn.argmin); });
  return r;
}

std::string BoundsReport::to_csv() const {
  auto row = [](const char* name, const BoundEntry& entry) {
    char buf[128];
    if (entry.applicable)
      std::snprintf(buf, sizeof(buf), "%s,%.17g,1\n", name, entry.value);
    else
      std::snprintf(buf, sizeof(buf), "%s,,0\n", name);
    return std::string(buf);
  };
  std::string out = "name,value,applicable\n";
  out += row("pgm_renes", pgm_renes);
  out += row("pgm_renes_pruned", pgm_renes_pruned);
  out += row("fidelity", fidelity);
  out += row("fidelity_pruned", fidelity_pruned);
  out += row("sqrt_sum", sqrt_sum);
  out += row("sqrt_sum_pruned", sqrt_sum_pruned);
  out += row("trace_norm", trace_norm);
  out += row("trace_norm_pruned", trace_norm_pruned);
  out += row("lower_sqrt_sum", lower_sqrt_sum);
  return out;
}

}  // namespace qsd
