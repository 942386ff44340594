#pragma once

#include "tobs/quasiaffine.hpp"

#include <limits>
#include <vector>

namespace tobs {

enum class Side { physical, hardy };

constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

// Half-open time window [lo, hi) with lo >= 1, optionally closed at hi.
// hi = kInfiniteTime denotes the tail [lo, infinity), which also collects the
// infinite-time cluster (eigenvalues of the inverse observable below the zero
// tolerance).
struct SpectralInterval {
  double lo = 1.0;
  double hi = kInfiniteTime;
  bool include_hi = false;

  bool contains(double t) const {
    if (t < lo) return false;
    if (hi == kInfiniteTime) return true;
    return t < hi || (include_hi && t <= hi);
  }
};

// Spectral data of an (unbounded) time observable T, held through its bounded
// inverse T^{-1} = omega* omega (physical side) or omega omega* (hardy side).
// Eigenvalues are stored in descending order.  The time coordinate of an
// eigenvalue lam is max(1, 1/lam); eigenvalues below zero_tol are assigned the
// infinite time coordinate.
struct TimeObservable {
  OperatorMatrix inverse_op;
  VecR eigvals;
  MatC eigvecs;
  Side side = Side::physical;
  Direction direction = Direction::forward;
  double zero_tol = 1e-12;

  const Space& space() const { return inverse_op.domain; }
  int dim() const { return space().dim; }
  double time_coordinate(int j) const {
    const double lam = eigvals(j);
    return lam > zero_tol ? std::max(1.0, 1.0 / lam) : kInfiniteTime;
  }
};

TimeObservable build_time_observable(const OperatorMatrix& omega, Side side,
                                     Direction direction);

// Orthogonal projection onto the span of eigenvectors whose time coordinate
// lies in the window.
MatC spectral_projector(const TimeObservable& obs, const SpectralInterval& e);

// Relative operator residual of the transport identity
//   omega xi(E) = xi_hat(E) omega
// between a physical-side and a hardy-side observable built from one omega.
double transport_residual(const TimeObservable& phys, const TimeObservable& hardy,
                          const OperatorMatrix& omega, const SpectralInterval& e);

// Relative operator residual of the resolvent intertwining
//   omega (T^{-1} - z)^{-1} = (T_hat^{-1} - z)^{-1} omega,
// requiring dist(z, [0,1]) >= 0.1 so both resolvents are uniformly bounded.
double resolvent_residual(const OperatorMatrix& omega, cd z);

// Boundary-value states x_mu(sigma) = 1/(sigma - mu), Im mu < 0, and their
// half-line restrictions psi_mu = theta P_+ x_mu.  oracle_psi_sq is an
// FFT-free lattice quadrature of ||psi_mu||^2 for cross-validation.
struct XmuRow {
  cd mu;
  double norm_x_sq = 0.0;
  double norm_psi_sq = 0.0;
  double ratio = 0.0;
  double oracle_psi_sq = 0.0;
};
std::vector<XmuRow> xmu_program(const GridSpec& spec, const std::vector<cd>& mu_list);

// Decay of the spectral mass in the early-time window [1, a) under the
// half-line evolution, starting from state normalized inside that window.
struct FlowRow {
  double t = 0.0;
  double mass_low = 0.0;
  double mass_high = 0.0;
};
struct FlowResult {
  std::vector<FlowRow> curve;
  double first_crossing = kInfiniteTime;
  bool crossed = false;
  double max_mass_low = 0.0;
};
FlowResult spectral_flow_experiment(const TimeObservable& obs,
                                    const HalfLineFunction& state, double a,
                                    const std::vector<double>& times,
                                    double threshold);

}  // namespace tobs
