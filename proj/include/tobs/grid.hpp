#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace tobs {

using cd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;

// Error thrown when a runtime invariant of the numerical model fails
// (as opposed to a malformed request, which throws std::invalid_argument).
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform symmetric grid sigma_k = -L + k*dsig, k = 0..N-1, with sigma = 0 at
// node N/2.  Conjugate frequencies tau_m = m*pi/L, m = -N/2..N/2-1.
struct GridSpec {
  int n_points = 0;
  double halfwidth = 0.0;

  double dsig() const { return 2.0 * halfwidth / n_points; }
  int half_points() const { return n_points / 2; }
  double sigma(int k) const { return -halfwidth + dsig() * k; }
  double dtau() const { return M_PI / halfwidth; }
  double tau(int m) const { return m * dtau(); }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n_points, double halfwidth);

// Complex samples over the full grid; inner products use the flat dsig weight.
struct GridFunction {
  GridSpec spec;
  VecC samples;
};

// Samples over the nonnegative half of a grid (nodes N/2..N-1, including
// sigma = 0), with the same flat dsig weight.
struct HalfLineFunction {
  GridSpec spec;
  VecC samples;
};

cd inner(const GridFunction& f, const GridFunction& g);
cd inner(const HalfLineFunction& f, const HalfLineFunction& g);
double norm(const GridFunction& f);
double norm(const HalfLineFunction& f);

// Isometric embedding of the half-line space: extend by zero to the left half.
GridFunction embed_half(const HalfLineFunction& h);

enum class RestrictMode { strict, lax };

// Inverse of the embedding.  In strict mode the mass on sigma < 0 must not
// exceed support_tol * ||f|| (else invariant_error); lax mode discards it.
HalfLineFunction restrict_half(const GridFunction& f,
                               RestrictMode mode = RestrictMode::strict,
                               double support_tol = 1e-10);

GridFunction sample(const GridSpec& spec, const std::function<cd(double)>& rule);
HalfLineFunction sample_half(const GridSpec& spec, const std::function<cd(double)>& rule);

}  // namespace tobs
