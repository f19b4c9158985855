#include "qsd/support.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qsd/sampling.hpp"

namespace qsd {

namespace {

constexpr double kDominationTol = 1e-10;
// Solver settings for support extraction: tight enough that vanishing
// operators decay well below the ambiguity band.
constexpr double kSupportSolveTol = 1e-12;
constexpr long kSupportSolveIter = 300000;
constexpr double kZ99 = 2.576;

double tr_sqrt_sum_squares(const Ensemble& e, int skip) {
  ComplexMatrix s = ComplexMatrix::Zero(e.dim(), e.dim());
  for (int i = 0; i < e.size(); ++i) {
    if (i == skip) continue;
    ComplexMatrix w = e.weighted(i);
    s += w * w;
  }
  return mat_sqrt_psd(HermitianMatrix(s)).mat().trace().real();
}

RateCi rate_ci(long hits, long total) {
  RateCi r;
  if (total <= 0) return r;
  r.rate = static_cast<double>(hits) / total;
  double half = kZ99 * std::sqrt(r.rate * (1.0 - r.rate) / total);
  r.lo = std::max(0.0, r.rate - half);
  r.hi = std::min(1.0, r.rate + half);
  return r;
}

}  // namespace

std::vector<int> extract_support(const Povm& m, double tol) {
  std::vector<int> out;
  for (size_t i = 0; i < m.operators.size(); ++i)
    if (m.operators[i].mat().trace().real() > tol)
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> ambiguous_support(const Povm& m, double lo, double hi) {
  std::vector<int> out;
  for (size_t i = 0; i < m.operators.size(); ++i) {
    double tr = m.operators[i].mat().trace().real();
    if (tr >= lo && tr <= hi) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> subset_of_support(const Ensemble& e) {
  double full = tr_sqrt_sum_squares(e, -1);
  double threshold = full * full;
  std::vector<int> out;
  for (int i = 0; i < e.size(); ++i)
    if (tr_sqrt_sum_squares(e, i) < threshold - 1e-12) out.push_back(i);
  return out;
}

std::vector<int> superset_of_support(
    const Ensemble& e, const std::optional<std::vector<double>>& weights) {
  const int n = e.size();
  std::vector<double> w;
  if (weights) {
    w = *weights;
    if (static_cast<int>(w.size()) != n - 1)
      fail(ErrorCode::invalid_weights, "expected n-1 weights");
    double sum = 0.0;
    for (double v : w) {
      if (v < -1e-12) fail(ErrorCode::invalid_weights, "negative weight");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kPsdTol)
      fail(ErrorCode::invalid_weights, "weights do not sum to 1");
  } else {
    w.assign(static_cast<size_t>(std::max(n - 1, 0)), n > 1 ? 1.0 / (n - 1) : 0.0);
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix t = -e.weighted(i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      t += w[static_cast<size_t>(j < i ? j : j - 1)] * e.weighted(j);
    }
    if (min_eigenvalue(HermitianMatrix(t)) > kDominationTol)
      continue;  // dominated: E_i vanishes in the optimum
    out.push_back(i);
  }
  return out;
}

SupportEstimate estimate_support(const Ensemble& e, bool solve) {
  SupportEstimate est;
  est.subset = subset_of_support(e);
  est.superset = superset_of_support(e);
  est.coincide = est.subset == est.superset;
  if (solve) {
    SolveOptions opts;
    opts.tol = kSupportSolveTol;
    opts.max_iter = kSupportSolveIter;
    SolveResult res = solve_optimal(e, opts);
    est.exact = extract_support(res.povm);
    est.ambiguous = ambiguous_support(res.povm);
  }
  return est;
}

CoincidenceStats coincidence_experiment(long instances, int n, int d,
                                        std::uint64_t seed, int threads) {
  if (instances < 1) fail(ErrorCode::invalid_input, "need at least 1 instance");
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::max<long>(1, std::min<long>(threads, instances)));

  struct Tally {
    long subset_match = 0, superset_match = 0, coincide = 0;
    long ambiguous = 0, violations = 0;
  };
  std::vector<Tally> tallies(static_cast<size_t>(threads));

  auto worker = [&](int t) {
    Tally& tally = tallies[static_cast<size_t>(t)];
    for (long k = t; k < instances; k += threads) {
      Ensemble inst =
          sample_instance(n, d, seed, static_cast<std::uint64_t>(k));
      SupportEstimate est = estimate_support(inst, true);
      const std::vector<int>& exact = *est.exact;
      if (est.subset == exact) ++tally.subset_match;
      if (est.superset == exact) ++tally.superset_match;
      if (est.coincide) ++tally.coincide;
      if (!est.ambiguous.empty()) {
        ++tally.ambiguous;
        continue;  // ambiguous support is not held against soundness
      }
      bool sub_ok = std::includes(exact.begin(), exact.end(),
                                  est.subset.begin(), est.subset.end());
      bool sup_ok = std::includes(est.superset.begin(), est.superset.end(),
                                  exact.begin(), exact.end());
      if (!sub_ok || !sup_ok) ++tally.violations;
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (std::thread& th : pool) th.join();

  Tally total;
  for (const Tally& t : tallies) {
    total.subset_match += t.subset_match;
    total.superset_match += t.superset_match;
    total.coincide += t.coincide;
    total.ambiguous += t.ambiguous;
    total.violations += t.violations;
  }
  CoincidenceStats stats;
  stats.instances = instances;
  stats.subset_match = rate_ci(total.subset_match, instances);
  stats.superset_match = rate_ci(total.superset_match, instances);
  stats.coincide = rate_ci(total.coincide, instances);
  stats.ambiguous_instances = total.ambiguous;
  stats.soundness_violations = total.violations;
  return stats;
}

}  // namespace qsd
