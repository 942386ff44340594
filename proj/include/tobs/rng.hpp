#pragma once

#include "tobs/grid.hpp"

#include <random>

namespace tobs {

// Seeded Gaussian stream with an explicit Box-Muller transform, so the byte
// stream depends only on the mt19937_64 specification and not on library
// internals.
class DeterministicGaussian {
 public:
  explicit DeterministicGaussian(unsigned long long seed) : rng_(seed) {}

  double uniform() { return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53; }

  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * M_PI * uniform());
  }

  cd complex_normal() {
    const double re = normal();
    const double im = normal();
    return cd(re, im);
  }

  VecC complex_vector(int n) {
    VecC v(n);
    for (int i = 0; i < n; ++i) v[i] = complex_normal();
    return v;
  }

  MatC complex_matrix(int rows, int cols) {
    MatC m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_normal();
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tobs
