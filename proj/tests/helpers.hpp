#pragma once

#include "tobs/fourier.hpp"
#include "tobs/grid.hpp"
#include "tobs/rng.hpp"

#include <cmath>

namespace tobs::testutil {

// Boundary value of the reproducing-kernel state attached to mu (Im mu < 0):
// x_mu(sigma) = 1 / (sigma - mu), with ||x_{-i}||^2 -> pi.
inline GridFunction x_mu(const GridSpec& spec, cd mu) {
  return sample(spec, [mu](double s) { return 1.0 / (cd(s, 0.0) - mu); });
}

inline GridFunction gaussian_state(const GridSpec& spec, double center, double width) {
  return sample(spec, [center, width](double s) {
    const double u = (s - center) / width;
    return cd(std::exp(-0.5 * u * u), 0.0);
  });
}

inline GridFunction normalized(GridFunction f) {
  const double n = norm(f);
  for (auto& v : f.samples) v /= n;
  return f;
}

inline GridFunction random_state(const GridSpec& spec, unsigned long long seed) {
  DeterministicGaussian g(seed);
  return GridFunction{spec, g.complex_vector(spec.n_points)};
}

// Random state whose frequency content is damped by a Gaussian well inside the
// wrap horizon, so translations stay faithful to the line for |t| << horizon.
inline GridFunction random_smooth_state(const GridSpec& spec, unsigned long long seed,
                                        double tau_fraction = 1.0 / 6.0) {
  DeterministicGaussian g(seed);
  FrequencySpectrum s{spec, VecC(spec.n_points)};
  const double horizon = spec.half_points() * spec.dtau();
  const double t0 = tau_fraction * horizon;
  for (int i = 0; i < spec.n_points; ++i) {
    const double tau = s.tau_of(i);
    s.coeffs[i] = g.complex_normal() * std::exp(-(tau / t0) * (tau / t0));
  }
  return inverse_fourier(s);
}

}  // namespace tobs::testutil
