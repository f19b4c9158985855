#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsd/analytic.hpp"
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

Povm uniform_povm(int n, Eigen::Index d) {
  Povm m;
  m.dim = d;
  for (int i = 0; i < n; ++i)
    m.operators.push_back(
        HermitianMatrix(ComplexMatrix::Identity(d, d) / double(n)));
  return m;
}

// Random POVM: congruence-normalized random PSD operators.
Povm random_povm(int n, int d, RngStream& rng) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    HermitianMatrix p = test::random_psd(d, rng);
    parts.push_back(p.mat());
    total += p.mat();
  }
  ComplexMatrix x = pinv_sqrt(HermitianMatrix(total), 1e-14).mat();
  Povm m;
  m.dim = d;
  for (int i = 0; i < n; ++i)
    m.operators.push_back(HermitianMatrix(x * parts[size_t(i)] * x));
  return m;
}

}  // namespace

TEST_CASE("success_probability anchors") {
  Ensemble pair = orthogonal_pair();
  Povm projective;
  projective.dim = 2;
  projective.operators.push_back(pair.state(0).matrix());
  projective.operators.push_back(pair.state(1).matrix());
  CHECK(success_probability(pair, projective) == doctest::Approx(1.0));

  CHECK(success_probability(pair, uniform_povm(2, 2)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  Ensemble triple = equidistant_triple(0.8);
  CHECK(success_probability(triple, uniform_povm(3, 2)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  Ensemble mirror = mirror_symmetric(1.0 / 3.0, M_PI / 4.0);
  CHECK(success_probability(mirror, pgm(mirror)) ==
        doctest::Approx((5.0 + 2.0 * std::sqrt(2.0)) / 12.0).epsilon(1e-12));

  CHECK_THROWS_AS(success_probability(pair, uniform_povm(3, 2)), Error);
  CHECK_THROWS_AS(success_probability(pair, uniform_povm(2, 3)), Error);
}

TEST_CASE("validate_povm") {
  CHECK(validate_povm(uniform_povm(1, 2)).ok);
  CHECK(validate_povm(uniform_povm(4, 3)).ok);

  Povm doubled;
  doubled.dim = 2;
  doubled.operators.push_back(HermitianMatrix::identity(2));
  doubled.operators.push_back(HermitianMatrix::identity(2));
  PovmValidation bad = validate_povm(doubled);
  CHECK_FALSE(bad.ok);
  CHECK(!bad.message.empty());

  Povm indefinite;
  indefinite.dim = 2;
  ComplexMatrix z(2, 2);
  z << 2, 0, 0, -1;
  indefinite.operators.push_back(HermitianMatrix(z));
  ComplexMatrix w(2, 2);
  w << -1, 0, 0, 2;
  indefinite.operators.push_back(HermitianMatrix(w));
  CHECK_FALSE(validate_povm(indefinite).ok);

  RngStream rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Ensemble e = test::random_pure_ensemble(3, 2, rng);
    CHECK(validate_povm(pgm(e)).ok);
  }
}

TEST_CASE("solve_optimal discriminates an orthogonal pair perfectly") {
  SolveResult res = solve_optimal(orthogonal_pair());
  CHECK(res.converged);
  CHECK(res.p_success == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.gap <= 1e-8);
  CHECK(validate_povm(res.povm).ok);
}

TEST_CASE("solve_optimal matches the equidistant closed form") {
  for (int i = 0; i <= 10; ++i) {
    double alpha = 0.5 + 0.5 * i / 10.0;
    SolveResult res = solve_optimal(equidistant_triple(alpha));
    CHECK(res.converged);
    CHECK(std::abs(res.p_success - equidistant_popt(alpha)) <= 1e-6);
  }
}

TEST_CASE("solve_optimal matches helstrom on random pure pairs") {
  RngStream rng(42);
  SolveOptions opts;
  opts.tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    int d = trial % 2 == 0 ? 2 : 3;
    Ensemble e = test::random_pure_ensemble(2, d, rng);
    SolveResult res = solve_optimal(e, opts);
    CHECK(res.converged);
    CHECK(std::abs(res.p_success - helstrom_two(e)) <= 1e-7);
  }
}

TEST_CASE("iteration is monotone and the certificate bounds every povm") {
  RngStream rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 3;
    int d = 2 + trial % 2;
    std::vector<double> priors = sample_dirichlet_uniform(n, rng);
    std::vector<DensityMatrix> states;
    for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(d, rng));
    Ensemble e(std::move(priors), std::move(states));

    double last = -1.0;
    bool monotone = true;
    SolveOptions opts;
    opts.observer = [&](long, double p) {
      if (p < last - 1e-12) monotone = false;
      last = p;
    };
    SolveResult res = solve_optimal(e, opts);
    CHECK(res.converged);
    CHECK(monotone);
    CHECK(res.gap >= -1e-12);
    CHECK(res.upper_bound <= 1.0 + 1e-9);
    CHECK(validate_povm(res.povm).ok);

    // certified upper bound dominates arbitrary measurements
    for (int k = 0; k < 5; ++k) {
      Povm m = random_povm(n, d, rng);
      CHECK(success_probability(e, m) <= res.upper_bound + 1e-9);
    }
    CHECK(certified_upper_bound(e, res.povm) >= res.p_success - 1e-12);
  }
}

TEST_CASE("absorbed states: guessing the likelier of identical states") {
  ComplexVector v(2);
  v << 1, 0;
  Ensemble e({0.9, 0.1}, {DensityMatrix::pure(v), DensityMatrix::pure(v)});
  SolveResult res = solve_optimal(e);
  CHECK(res.converged);
  CHECK(res.p_success == doctest::Approx(0.9).epsilon(1e-8));
}

TEST_CASE("pruned-ensemble relation holds inside the mirror region") {
  for (double theta : {0.4, 0.8, 1.2}) {
    double ct = std::cos(theta), st = std::sin(theta);
    double threshold = 1.0 / (2.0 + ct * (ct + st));
    double p = threshold + 0.7 * (0.5 - threshold);
    Ensemble e = mirror_symmetric(p, theta);
    SolveOptions opts;
    opts.tol = 1e-10;
    SolveResult full = solve_optimal(e, opts);
    SolveResult sub = solve_optimal(pruned_ensemble(e, {0, 1}), opts);
    CHECK(std::abs(full.p_success - 2.0 * p * sub.p_success) <= 1e-6);
    // closed form for the pruned pair: p (1 + sin 2 theta)
    CHECK(std::abs(full.p_success - p * (1.0 + std::sin(2 * theta))) <= 1e-6);
  }
}

TEST_CASE("not converged results still carry a certified gap") {
  SolveOptions opts;
  opts.tol = 1e-13;
  opts.max_iter = 3;
  Ensemble e = mirror_symmetric(0.34, M_PI / 4.0);
  SolveResult res = solve_optimal(e, opts);
  CHECK_FALSE(res.converged);
  CHECK(res.gap > 1e-13);
  CHECK(res.upper_bound >= res.p_success);
  CHECK(validate_povm(res.povm).ok);
}

TEST_CASE("p_opt is invariant under unitary conjugation and reflection") {
  RngStream rng(44);
  SolveOptions opts;
  opts.tol = 1e-9;
  for (int trial = 0; trial < 10; ++trial) {
    Ensemble e = test::random_pure_ensemble(3, 2, rng);
    SolveResult base = solve_optimal(e, opts);

    ComplexMatrix u = test::random_unitary(2, rng);
    std::vector<double> priors;
    std::vector<DensityMatrix> rotated, reflected;
    for (int i = 0; i < e.size(); ++i) {
      priors.push_back(e.prior(i));
      rotated.push_back(
          DensityMatrix(HermitianMatrix(u * e.state(i).mat() * u.adjoint())));
      reflected.push_back(reflect_qubit(e.state(i)));
    }
    SolveResult rot = solve_optimal(Ensemble(priors, rotated), opts);
    SolveResult ref = solve_optimal(Ensemble(priors, reflected), opts);
    CHECK(std::abs(rot.p_success - base.p_success) <= 1e-6);
    CHECK(std::abs(ref.p_success - base.p_success) <= 1e-6);
  }
}

TEST_CASE("reduced representations reproduce the equidistant optimum") {
  SolveOptions opts;
  opts.tol = 1e-9;
  for (double alpha : {0.5, 0.75, 0.9}) {
    Ensemble from_gram = ensemble_from_gram(gram(equidistant_triple(alpha)));
    CHECK(std::abs(solve_optimal(from_gram, opts).p_success -
                   equidistant_popt(alpha)) <= 1e-6);
  }

  // the equidistant fidelity pattern alone pins the optimum: alpha = 1/2
  FidelityMatrix f;
  f.normalized = Eigen::MatrixXd::Constant(3, 3, 0.5);
  f.unnormalized = Eigen::MatrixXd::Constant(3, 3, 0.5 / 3.0);
  for (int i = 0; i < 3; ++i) {
    f.normalized(i, i) = 1.0;
    f.unnormalized(i, i) = 1.0 / 3.0;
  }
  Ensemble rebuilt = qubit_ensemble_from_fidelity(f);
  CHECK(std::abs(solve_optimal(rebuilt, opts).p_success - 2.0 / 3.0) <= 1e-6);
}

TEST_CASE("the fidelity matrix determines p_opt for qubits") {
  RngStream rng(45);
  SolveOptions opts;
  opts.tol = 1e-9;
  for (int trial = 0; trial < 10; ++trial) {
    Ensemble e = test::random_pure_ensemble(3, 2, rng);
    Ensemble rebuilt = qubit_ensemble_from_fidelity(fidelity_matrix(e));
    SolveResult a = solve_optimal(e, opts);
    SolveResult b = solve_optimal(rebuilt, opts);
    CHECK(std::abs(a.p_success - b.p_success) <= 1e-6);
  }
}

TEST_CASE("pgm sandwich holds on random instances") {
  RngStream rng(46);
  SolveOptions opts;
  opts.tol = 1e-9;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    int d = 2 + trial % 2;
    std::vector<double> priors = sample_dirichlet_uniform(n, rng);
    std::vector<DensityMatrix> states;
    for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(d, rng));
    Ensemble e(std::move(priors), std::move(states));
    SolveResult res = solve_optimal(e, opts);
    double p_pgm = pgm_success(e);
    CHECK(p_pgm <= res.p_success + 1e-9 + res.gap);
    CHECK(p_pgm >= res.p_success * res.p_success - 1e-9);
  }
}
