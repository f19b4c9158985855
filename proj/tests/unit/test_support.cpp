#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qsd/analytic.hpp"
#include "qsd/support.hpp"
#include "test_helpers.hpp"

using namespace qsd;

namespace {

Ensemble orthogonal_pair() {
  ComplexVector v0(2), v1(2);
  v0 << 1, 0;
  v1 << 0, 1;
  return Ensemble({0.5, 0.5},
                  {DensityMatrix::pure(v0), DensityMatrix::pure(v1)});
}

// Priors (0.45, 0.45, 0.1) on |0><0|, |1><1| and the maximally mixed state;
// the third weighted state is dominated entrywise.
Ensemble dominated_triple() {
  ComplexVector v0(2), v1(2);
  v0 << 1, 0;
  v1 << 0, 1;
  return Ensemble({0.45, 0.45, 0.1},
                  {DensityMatrix::pure(v0), DensityMatrix::pure(v1),
                   DensityMatrix::maximally_mixed(2)});
}

Ensemble random_instance(int n, int d, RngStream& rng) {
  std::vector<double> priors = sample_dirichlet_uniform(n, rng);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(d, rng));
  return Ensemble(std::move(priors), std::move(states));
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("extract_support reads converged povms") {
  SolveOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 300000;

  SolveResult pair = solve_optimal(orthogonal_pair(), opts);
  CHECK(extract_support(pair.povm) == std::vector<int>{0, 1});

  // mirror family inside the pruning region
  Ensemble mirror = mirror_symmetric(0.42, M_PI / 4.0);
  SolveResult m = solve_optimal(mirror, opts);
  CHECK(extract_support(m.povm) == std::vector<int>{0, 1});
  CHECK(ambiguous_support(m.povm).empty());

  // identical states with skewed priors: only the likelier one survives
  ComplexVector v(2);
  v << 1, 0;
  Ensemble identical({0.9, 0.1},
                     {DensityMatrix::pure(v), DensityMatrix::pure(v)});
  SolveResult id = solve_optimal(identical, opts);
  CHECK(extract_support(id.povm) == std::vector<int>{0});
}

TEST_CASE("subset_of_support certifies members cheaply") {
  CHECK(subset_of_support(orthogonal_pair()) == std::vector<int>{0, 1});

  ComplexVector v(2);
  v << 1, 1;
  Ensemble single({1.0}, {DensityMatrix::pure(v)});
  CHECK(subset_of_support(single) == std::vector<int>{0});

  CHECK(subset_of_support(dominated_triple()) == std::vector<int>{0, 1});
}

TEST_CASE("superset_of_support excludes dominated states") {
  CHECK(superset_of_support(dominated_triple()) == std::vector<int>{0, 1});
  CHECK(superset_of_support(orthogonal_pair()) == std::vector<int>{0, 1});

  // explicit uniform weights match the default
  std::vector<double> w{0.5, 0.5};
  CHECK(superset_of_support(dominated_triple(), w) ==
        std::vector<int>{0, 1});
  CHECK_THROWS_AS(superset_of_support(dominated_triple(),
                                      std::vector<double>{0.5}),
                  Error);
  CHECK_THROWS_AS(superset_of_support(dominated_triple(),
                                      std::vector<double>{0.8, 0.8}),
                  Error);

  // distinct equiprobable pure states: nothing can be excluded
  RngStream rng(61);
  Ensemble pair = test::random_pure_ensemble(2, 2, rng);
  CHECK(superset_of_support(pair) == std::vector<int>{0, 1});
}

TEST_CASE("a third state equal to the first is never pruned away alone") {
  // with psi3 = psi1 the solver keeps the 1 <-> 3 symmetry, so the support
  // cannot collapse to {0, 1}
  RealVector x(3), y(3);
  x << 1, 0, 0;
  y << 0, 1, 0;
  std::vector<double> priors(3, 1.0 / 3.0);
  std::vector<DensityMatrix> states{state_from_bloch(x, 2),
                                    state_from_bloch(y, 2),
                                    state_from_bloch(x, 2)};
  SolveOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 300000;
  SolveResult res = solve_optimal(Ensemble(priors, states), opts);
  CHECK(extract_support(res.povm) != std::vector<int>{0, 1});
}

TEST_CASE("estimate_support combines the three detectors") {
  SupportEstimate est = estimate_support(dominated_triple(), true);
  CHECK(est.subset == std::vector<int>{0, 1});
  CHECK(est.superset == std::vector<int>{0, 1});
  CHECK(est.coincide);
  REQUIRE(est.exact.has_value());
  CHECK(*est.exact == std::vector<int>{0, 1});

  SupportEstimate cheap = estimate_support(orthogonal_pair(), false);
  CHECK(cheap.coincide);
  CHECK_FALSE(cheap.exact.has_value());
}

TEST_CASE("subset and superset sandwich the solver support") {
  RngStream rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    Ensemble e = random_instance(3, 2, rng);
    SupportEstimate est = estimate_support(e, true);
    CHECK(subset_of(est.subset, est.superset));
    if (!est.ambiguous.empty()) continue;
    CHECK(subset_of(est.subset, *est.exact));
    CHECK(subset_of(*est.exact, est.superset));
  }
}

TEST_CASE("states excluded by the superset test do not carry weight") {
  RngStream rng(63);
  SolveOptions opts;
  opts.tol = 1e-10;
  int forced = 0;
  for (int trial = 0; trial < 40 && forced < 10; ++trial) {
    Ensemble e = random_instance(3, 2, rng);
    std::vector<int> keep = superset_of_support(e);
    if (static_cast<int>(keep.size()) == e.size()) continue;
    ++forced;
    SolveResult full = solve_optimal(e, opts);
    SolveResult sub = solve_optimal(pruned_ensemble(e, keep), opts);
    double rebuilt = plus_weight(e, keep) * sub.p_success;
    CHECK(std::abs(full.p_success - rebuilt) <= 1e-8);
  }
  CHECK(forced > 0);
}

TEST_CASE("coincidence_experiment keeps the invariants on a small run") {
  CoincidenceStats stats = coincidence_experiment(100, 2, 2, 77);
  CHECK(stats.instances == 100);
  CHECK(stats.soundness_violations == 0);
  for (const RateCi* r :
       {&stats.subset_match, &stats.superset_match, &stats.coincide}) {
    CHECK(r->rate >= 0.0);
    CHECK(r->rate <= 1.0);
    CHECK(r->lo <= r->rate);
    CHECK(r->rate <= r->hi);
  }

  // deterministic under a fixed seed, regardless of the thread count
  CoincidenceStats st1 = coincidence_experiment(60, 3, 2, 5, 1);
  CoincidenceStats st2 = coincidence_experiment(60, 3, 2, 5, 2);
  CHECK(st1.coincide.rate == st2.coincide.rate);
  CHECK(st1.subset_match.rate == st2.subset_match.rate);
  CHECK(st1.superset_match.rate == st2.superset_match.rate);

  // confidence intervals shrink like 1/sqrt(n)
  CoincidenceStats wide = coincidence_experiment(50, 3, 2, 5);
  CoincidenceStats narrow = coincidence_experiment(800, 3, 2, 5);
  double w1 = wide.coincide.hi - wide.coincide.lo;
  double w2 = narrow.coincide.hi - narrow.coincide.lo;
  CHECK(w2 < w1);
}
