#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

// Measurement: PSD operators summing to the identity.
struct Povm {
  Eigen::Index dim = 0;
  std::vector<HermitianMatrix> operators;
};

struct PovmValidation {
  bool ok = false;
  std::string message;
};

// Checks positivity of every operator and completeness, both at tol.
PovmValidation validate_povm(const Povm& m, double tol = 1e-8);

// sum_i p_i tr(sigma_i E_i), clamped into [0, 1] by at most 1e-12.
double success_probability(const Ensemble& e, const Povm& m);

// Dual bound: with Gamma the symmetrized sum_i sigma~_i E_i and
// c = max_i max(0, -lambda_min(Gamma - sigma~_i)), the operator
// Gamma + c I dominates every sigma~_i, so tr(Gamma) + d c bounds the
// optimal success probability of any POVM. Capped at 1.
double certified_upper_bound(const Ensemble& e, const Povm& m);

struct SolveOptions {
  double tol = 1e-8;
  long max_iter = 100000;
  // Called after every update with (iteration, success probability).
  std::function<void(long, double)> observer;
};

struct SolveResult {
  Povm povm;
  double p_success = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Maximizes the success probability over POVMs with the monotone fixed
// point map E_i <- L^{-1/2} sigma~_i E_i sigma~_i L^{-1/2},
// L = sum_j sigma~_j E_j sigma~_j, starting from the pretty good
// measurement. Terminates once the certified gap drops below tol; a result
// is returned with its certified gap either way, converged says which.
SolveResult solve_optimal(const Ensemble& e, const SolveOptions& opts = {});

}  // namespace qsd
