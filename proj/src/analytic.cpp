#include "qsd/analytic.hpp"

#include <cmath>

#include "qsd/solver.hpp"

namespace qsd {

Povm pgm(const Ensemble& e) {
  const int n = e.size();
  const Eigen::Index d = e.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) s += e.weighted(i);
  HermitianMatrix sh(s);
  HermitianMatrix x = pinv_sqrt(sh);
  ComplexMatrix kernel = ComplexMatrix::Identity(d, d) -
                         range_projector(sh).mat();
  Povm m;
  m.dim = d;
  for (int i = 0; i < n; ++i)
    m.operators.emplace_back(x.mat() * e.weighted(i) * x.mat() +
                             kernel / n);
  return m;
}

double pgm_success(const Ensemble& e) {
  return success_probability(e, pgm(e));
}

double pgm_plus_success(const Ensemble& e, const std::vector<int>& i_plus) {
  plus_weight(e, i_plus);  // validates the index set
  const Eigen::Index d = e.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int i : i_plus) s += e.weighted(i);
  ComplexMatrix x = pinv_sqrt(HermitianMatrix(s)).mat();
  double p = 0.0;
  for (int i : i_plus) {
    ComplexMatrix sig = e.weighted(i);
    p += (sig * x * sig * x).trace().real();
  }
  return p;
}

double helstrom_two(const Ensemble& e) {
  if (e.size() != 2)
    fail(ErrorCode::invalid_input, "Helstrom form needs exactly two states");
  ComplexVector a = pure_state_vector(e.state(0));
  ComplexVector b = pure_state_vector(e.state(1));
  double overlap2 = std::norm(a.dot(b));
  double radicand = 1.0 - 4.0 * e.prior(0) * e.prior(1) * overlap2;
  return 0.5 * (1.0 + std::sqrt(std::max(radicand, 0.0)));
}

double equidistant_popt(double alpha) {
  if (alpha < 0.5 - 1e-12 || alpha > 1.0 + 1e-12)
    fail(ErrorCode::invalid_alpha, "alpha outside [1/2, 1]");
  alpha = std::clamp(alpha, 0.5, 1.0);
  return 2.0 * std::sqrt(3.0) / 9.0 * std::sqrt(1.0 - alpha * alpha) +
         1.0 / 3.0;
}

double mirror_pgm_success(double p, double theta) {
  if (p < -1e-12 || p > 0.5 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror prior outside [0, 1/2]");
  if (theta < -1e-12 || theta > M_PI_2 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror angle outside [0, pi/2]");
  p = std::clamp(p, 0.0, 0.5);
  double ct = std::cos(theta), st = std::sin(theta);
  double den = 1.0 - 2.0 * p * st * st;
  // den can only reach 0 at p = 1/2, theta = pi/2, where both fractions
  // vanish with their numerators.
  double lead = den > 0.0 ? std::sqrt(p) * ct * ct / std::sqrt(den) : 0.0;
  double third = 1.0 - 2.0 * p == 0.0 ? 0.0
                                      : (1.0 - 2.0 * p) * (1.0 - 2.0 * p) / den;
  double root = lead + st / std::sqrt(2.0);
  return 2.0 * p * root * root + third;
}

bool mirror_region_condition(double p, double theta) {
  if (p < -1e-12 || p > 0.5 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror prior outside [0, 1/2]");
  if (theta < -1e-12 || theta > M_PI_2 + 1e-12)
    fail(ErrorCode::invalid_input, "mirror angle outside [0, pi/2]");
  double ct = std::cos(theta), st = std::sin(theta);
  return p >= 1.0 / (2.0 + ct * (ct + st));
}

}  // namespace qsd
