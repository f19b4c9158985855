#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

// Deterministic random stream. Instance streams are derived from
// (seed, index) with a splitmix64 hash, so instance i is a pure function of
// the pair regardless of how work is distributed across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();   // [0, 1)
  double gaussian();  // standard normal, Box-Muller

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// rho = G G^dagger / tr(G G^dagger) with iid complex Gaussian G
// (Hilbert-Schmidt measure).
DensityMatrix sample_hs_density(int d, RngStream& rng);

// Dir(1, ..., 1): normalized iid standard exponentials.
std::vector<double> sample_dirichlet_uniform(int n, RngStream& rng);

Ensemble sample_instance(int n, int d, RngStream& rng);
Ensemble sample_instance(int n, int d, std::uint64_t seed,
                         std::uint64_t index);

}  // namespace qsd
