#include <doctest.h>

#include <cmath>

#include "qsd/analytic.hpp"
#include "qsd/bounds.hpp"
#include "qsd/solver.hpp"
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

Ensemble random_instance(int n, int d, RngStream& rng) {
  std::vector<double> priors = sample_dirichlet_uniform(n, rng);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(d, rng));
  return Ensemble(std::move(priors), std::move(states));
}

}  // namespace

TEST_CASE("bound_renes anchors") {
  CHECK(bound_renes(1.0, 4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bound_renes(0.25, 4) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(bound_renes(0.2, 4), Error);
  CHECK_THROWS_AS(bound_renes(1.5, 4), Error);

  // mirror family: the naive route through the closed-form PGM value
  double p = 1.0 / 3.0, theta = M_PI / 4.0;
  double direct = std::sqrt(2.0 / 3.0 * (mirror_pgm_success(p, theta) -
                                         1.0 / 3.0)) +
                  1.0 / 3.0;
  CHECK(bound_renes(mirror_pgm_success(p, theta), 3) ==
        doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("bound_renes_pruned has a mirror-family closed form") {
  for (double theta : {0.3, 0.8, 1.2}) {
    double ct = std::cos(theta), st = std::sin(theta);
    double threshold = 1.0 / (2.0 + ct * (ct + st));
    double p = threshold + 0.5 * (0.5 - threshold);
    Ensemble e = mirror_symmetric(p, theta);
    double expect = p * (std::sqrt(2.0 * ct * st) + 1.0);
    CHECK(bound_renes_pruned(e, {0, 1}) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  Ensemble e = mirror_symmetric(0.4, M_PI / 4.0);
  CHECK(bound_renes_pruned(e, {0, 1}) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(bound_renes_pruned(e, {0, 1, 2}) ==
        doctest::Approx(bound_renes(pgm_success(e), 3)).epsilon(1e-12));
}

TEST_CASE("bound_fidelity anchors") {
  CHECK(bound_fidelity(orthogonal_pair()) == doctest::Approx(1.0));

  double p = 0.4, theta = M_PI / 4.0;
  Ensemble e = mirror_symmetric(p, theta);
  double c2t = std::cos(2 * theta), ct = std::cos(theta);
  double expect =
      1.0 - p * p * c2t * c2t - 2.0 * p * (1.0 - 2.0 * p) * ct * ct;
  CHECK(bound_fidelity(e) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(bound_fidelity(e) == doctest::Approx(0.92).epsilon(1e-12));

  Ensemble mixed({0.5, 0.5}, {DensityMatrix::maximally_mixed(2),
                              DensityMatrix::maximally_mixed(2)});
  CHECK_THROWS_AS(bound_fidelity(mixed), Error);
}

TEST_CASE("bound_fidelity_pruned has a mirror closed form and is tighter") {
  double p = 0.4, theta = M_PI / 4.0;
  Ensemble e = mirror_symmetric(p, theta);
  double c2t = std::cos(2 * theta);
  CHECK(bound_fidelity_pruned(e, {0, 1}) ==
        doctest::Approx(2.0 * p * (1.0 - 0.25 * c2t * c2t)).epsilon(1e-12));
  CHECK(bound_fidelity_pruned(e, {0, 1}) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(bound_fidelity_pruned(e, {0, 1, 2}) ==
        doctest::Approx(bound_fidelity(e)).epsilon(1e-12));

  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j) {
      double pp = 0.5 * i / 12.0;
      double th = M_PI / 2.0 * j / 12.0;
      Ensemble m = mirror_symmetric(pp, th);
      CHECK(bound_fidelity_pruned(m, {0, 1}) <=
            bound_fidelity(m) + 1e-12);
    }
}

TEST_CASE("bound_sqrt_sum anchors") {
  CHECK(bound_sqrt_sum(orthogonal_pair()) == doctest::Approx(1.0));
  ComplexVector v(2);
  v << 1, 1;
  Ensemble single({1.0}, {DensityMatrix::pure(v)});
  CHECK(bound_sqrt_sum(single) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lower_sqrt_sum(single) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lower_sqrt_sum(orthogonal_pair()) == doctest::Approx(1.0));

  // identical pair: tr sqrt(2 (sigma/2)^2) = 1/sqrt(2), lower bound 1/2
  Ensemble identical({0.5, 0.5},
                     {DensityMatrix::pure(v), DensityMatrix::pure(v)});
  CHECK(bound_sqrt_sum(identical) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lower_sqrt_sum(identical) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sqrt_sum pruning never increases the bound") {
  RngStream rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 3;
    Ensemble e = random_instance(n, 2 + trial % 2, rng);
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (rng.uniform() < 0.6) subset.push_back(i);
    if (subset.empty()) subset.push_back(0);
    CHECK(bound_sqrt_sum_pruned(e, subset) <= bound_sqrt_sum(e) + 1e-12);
  }

  Ensemble e = random_instance(3, 2, rng);
  CHECK(bound_sqrt_sum_pruned(e, {0, 1, 2}) ==
        doctest::Approx(bound_sqrt_sum(e)).epsilon(1e-12));

  // dropping a zero-prior state changes nothing
  ComplexVector v0(2), v1(2);
  v0 << 1, 0;
  v1 << 0, 1;
  Ensemble padded({0.5, 0.5, 0.0},
                  {DensityMatrix::pure(v0), DensityMatrix::pure(v1),
                   DensityMatrix::maximally_mixed(2)});
  CHECK(bound_sqrt_sum_pruned(padded, {0, 1}) ==
        doctest::Approx(bound_sqrt_sum(padded)).epsilon(1e-12));
}

TEST_CASE("bound_trace_norm anchors") {
  TraceNormBound pair = bound_trace_norm(orthogonal_pair());
  CHECK(pair.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.argmin == 0);

  // two-state bound equals the helstrom value for pure pairs
  RngStream rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    Ensemble e = test::random_pure_ensemble(2, 2, rng);
    CHECK(bound_trace_norm(e).value ==
          doctest::Approx(helstrom_two(e)).epsilon(1e-10));
  }

  // equiprobable case: (min_j sum_i ||sigma_i - sigma_j||_1 + 2) / (2 N)
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3;
    std::vector<double> priors(n, 1.0 / n);
    std::vector<DensityMatrix> states;
    for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(2, rng));
    Ensemble e(priors, states);
    double best = 1e300;
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i)
        sum += trace_norm(e.state(i).mat() - e.state(j).mat());
      best = std::min(best, sum);
    }
    CHECK(bound_trace_norm(e).value ==
          doctest::Approx((best + 2.0) / (2.0 * n)).epsilon(1e-10));
  }
}

TEST_CASE("bound_trace_norm_pruned anchors") {
  RngStream rng(53);
  std::vector<double> priors(3, 1.0 / 3.0);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 3; ++i) states.push_back(sample_hs_density(2, rng));
  Ensemble e(priors, states);
  TraceNormBound base = bound_trace_norm(e);

  CHECK(bound_trace_norm_pruned(e, {0, 1, 2}, base.argmin) ==
        doctest::Approx(base.value).epsilon(1e-12));
  // singleton: empty sum leaves 2 / (2 N) = 1/N
  CHECK(bound_trace_norm_pruned(e, {base.argmin}, base.argmin) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  Ensemble skewed = mirror_symmetric(0.4, 0.7);
  CHECK_THROWS_AS(bound_trace_norm_pruned(skewed, {0, 1}, 0), Error);
}

TEST_CASE("bounds_report aggregates values and applicability") {
  Ensemble e = mirror_symmetric(0.4, M_PI / 4.0);
  BoundsReport bare = bounds_report(e);
  CHECK(bare.pgm_renes.applicable);
  CHECK_FALSE(bare.pgm_renes_pruned.applicable);
  CHECK(bare.pgm_renes_pruned.reason == "requires a support set");

  BoundsReport with = bounds_report(e, std::vector<int>{0, 1});
  CHECK(with.pgm_renes_pruned.applicable);
  CHECK(with.pgm_renes_pruned.value == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(with.fidelity_pruned.value == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_FALSE(with.trace_norm_pruned.applicable);  // not equiprobable

  // mixed states: fidelity entries flagged inapplicable with a reason
  Ensemble mixed({0.5, 0.5}, {DensityMatrix::maximally_mixed(2),
                              DensityMatrix::maximally_mixed(2)});
  BoundsReport m = bounds_report(mixed, std::vector<int>{0});
  CHECK_FALSE(m.fidelity.applicable);
  CHECK(!m.fidelity.reason.empty());
  CHECK(m.sqrt_sum.applicable);

  std::string csv = with.to_csv();
  CHECK(csv.find("name,value,applicable\n") == 0);
  CHECK(csv.find("pgm_renes,") != std::string::npos);
  CHECK(csv.find("lower_sqrt_sum,") != std::string::npos);
}

TEST_CASE("all bounds are sound against the solver on random instances") {
  RngStream rng(54);
  SolveOptions opts;
  opts.tol = 1e-10;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 3;
    int d = 2 + trial % 2;
    Ensemble e = random_instance(n, d, rng);
    SolveResult res = solve_optimal(e, opts);
    std::vector<int> support;
    for (size_t i = 0; i < res.povm.operators.size(); ++i)
      if (res.povm.operators[i].mat().trace().real() > 1e-8)
        support.push_back(static_cast<int>(i));
    BoundsReport r = bounds_report(e, support);
    for (const BoundEntry* upper :
         {&r.pgm_renes, &r.pgm_renes_pruned, &r.fidelity, &r.fidelity_pruned,
          &r.sqrt_sum, &r.sqrt_sum_pruned, &r.trace_norm,
          &r.trace_norm_pruned})
      if (upper->applicable) CHECK(upper->value >= res.p_success - 1e-9);
    CHECK(r.lower_sqrt_sum.value <= res.p_success + res.gap + 1e-9);
  }
}

TEST_CASE("equidistant bounds respect the known optimum") {
  Ensemble e = equidistant_triple(0.5);
  BoundsReport r = bounds_report(e);
  for (const BoundEntry* upper :
       {&r.pgm_renes, &r.fidelity, &r.sqrt_sum, &r.trace_norm})
    CHECK(upper->value >= 2.0 / 3.0 - 1e-9);
  CHECK(r.lower_sqrt_sum.value <= 2.0 / 3.0 + 1e-9);
}
