#include "qsd/sampling.hpp"

#include <cmath>

namespace qsd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ (index + 1))) {}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

DensityMatrix sample_hs_density(int d, RngStream& rng) {
  if (d < 2) fail(ErrorCode::wrong_dimension, "sampling needs dim >= 2");
  ComplexMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      double re = rng.gaussian();
      double im = rng.gaussian();
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix w = g * g.adjoint();
  double tr = w.trace().real();
  return DensityMatrix(HermitianMatrix(w / tr));
}

std::vector<double> sample_dirichlet_uniform(int n, RngStream& rng) {
  if (n < 1) fail(ErrorCode::invalid_input, "Dirichlet size must be >= 1");
  std::vector<double> x(static_cast<size_t>(n));
  double sum = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - rng.uniform());
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

Ensemble sample_instance(int n, int d, RngStream& rng) {
  std::vector<double> priors = sample_dirichlet_uniform(n, rng);
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) states.push_back(sample_hs_density(d, rng));
  return Ensemble(std::move(priors), std::move(states));
}

Ensemble sample_instance(int n, int d, std::uint64_t seed,
                         std::uint64_t index) {
  RngStream rng(seed, index);
  return sample_instance(n, d, rng);
}

}  // namespace qsd
