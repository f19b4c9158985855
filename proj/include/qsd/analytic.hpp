#pragma once

#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

struct Povm;

// Pretty good measurement E_i = S^{-1/2} sigma~_i S^{-1/2},
// S = sum_i sigma~_i, completed to a full POVM by spreading the projector
// onto ker(S) equally over the operators.
Povm pgm(const Ensemble& e);

double pgm_success(const Ensemble& e);

// PGM success restricted to i_plus: S runs over i_plus only and states
// outside it get the zero operator.
double pgm_plus_success(const Ensemble& e, const std::vector<int>& i_plus);

// Optimal two-pure-state discrimination,
// (1 + sqrt(1 - 4 p1 p2 |<psi1|psi2>|^2)) / 2.
double helstrom_two(const Ensemble& e);

// (2 sqrt(3) / 9) sqrt(1 - alpha^2) + 1/3 for the equidistant triple.
double equidistant_popt(double alpha);

// Closed-form PGM success probability of the mirror-symmetric family.
double mirror_pgm_success(double p, double theta);

// True iff p >= 1 / (2 + cos(t)(cos(t) + sin(t))), the regime where the
// optimal measurement ignores the third state.
bool mirror_region_condition(double p, double theta);

}  // namespace qsd
