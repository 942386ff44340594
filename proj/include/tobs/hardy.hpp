#pragma once

#include "tobs/fourier.hpp"

namespace tobs {

// Riesz projection onto the Hardy component with sign * tau >= 0.
// sign = +1 keeps bins tau_m >= 0 (m = 0 .. N/2-1); sign = -1 keeps the
// complement, including the Nyquist bin m = -N/2.
GridFunction riesz_project(const GridFunction& f, int sign);

// Dense matrix of the Riesz projection in the sample basis.
MatC riesz_matrix(const GridSpec& spec, int sign);

// Multiplication evolution (u(t) f)(sigma) = e^{-i sigma t} f(sigma).
GridFunction unitary_evolve(const GridFunction& f, double t);

// Toeplitz compression P_sign u(t) f.  For sign = +1 and t >= 0 this is the
// forward evolution semigroup on the positive Hardy component.
GridFunction toeplitz_evolve(const GridFunction& f, double t, int sign);

// Fraction ||P_sign f||^2 / ||f||^2 of spectral mass on one Hardy component.
double hardy_fraction(const GridFunction& f, int sign);

// Time horizon T0 = (N/2) * pi / L after which the discrete evolution wraps
// around the finite tau range; translation-based identities are only
// meaningful for |t| below this horizon.
double wrap_horizon(const GridSpec& spec);

}  // namespace tobs
