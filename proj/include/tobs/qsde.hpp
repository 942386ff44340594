#pragma once

#include "tobs/fock.hpp"

namespace tobs {

// Specification of a right quantum stochastic evolution equation
//   dU = [ L dA†_m + (S-1) dLambda_P - L*S dA_m - (iH + L*L/2) d<<m,m>> ] U
// on system (x) truncated Fock over the clock's base space.  The base space
// must carry the plain (weight-1) inner product so that Fock coefficients and
// base inner products agree.
struct ProcessSpec {
  MatC sys_l;
  MatC sys_s;
  MatC sys_h;
  MatC gauge;  // base-space projector P commuting with the spectral family
  Martingale clock;
  FockSpec fock;
  std::vector<double> time_grid;
  Side side = Side::physical;

  int system_dim() const { return static_cast<int>(sys_h.rows()); }
};

ProcessSpec make_process_spec(const MatC& l, const MatC& s, const MatC& h,
                              const Martingale& clock, int n_max,
                              const std::vector<double>& time_grid,
                              const MatC& gauge = MatC());
void validate_process_spec(const ProcessSpec& spec);

struct PathResult {
  std::vector<double> times;
  std::vector<MatC> unitaries;       // U_k, starting from the identity
  std::vector<double> clock_curve;   // <<m,m>>([0, t_k])
  std::vector<double> drift_curve;   // ||U_k* U_k - 1|| per step
  double unitarity_drift = 0.0;      // max over the path
};

// Explicit Euler integration with exact spectral increments of the clock.
PathResult integrate(const ProcessSpec& spec, Side side);

// Transport of the whole specification through an intertwining map: system
// operators unchanged, generator v -> omega v, gauge P -> hat_operator(P),
// clock observable rebuilt on the image side.
ProcessSpec rewrite_hat(const ProcessSpec& spec, const OperatorMatrix& omega);

// Matrix elements of both evolutions against product probes
// (h (x) e(u), U(t) h' (x) e(u')); the image side receives omega-mapped
// exponential arguments.
struct Probe {
  VecC h, u, hp, up;
};
struct ProbeCurve {
  std::vector<cd> m_phys;
  std::vector<cd> m_hat;
  cd gram_phys0;  // <e(u), e(u')>
  cd gram_hat0;   // <e(omega u), e(omega u')>
};
struct DiagnosticsReport {
  std::vector<double> times;
  std::vector<ProbeCurve> probes;
  std::vector<double> bracket_phys;  // <T^{-1} m_t, m_t>
  std::vector<double> bracket_hat;   // <<m_hat, m_hat>>([0,t])
  double bracket_residual = 0.0;     // max |bracket_hat - bracket_phys|
  double gram0_residual = 0.0;       // max |M(0) - Gram| over probes and sides
};
DiagnosticsReport intertwining_diagnostics(const ProcessSpec& phys_spec,
                                           const ProcessSpec& hat_spec,
                                           const PathResult& phys,
                                           const PathResult& hat,
                                           const OperatorMatrix& omega,
                                           const std::vector<Probe>& probes);

// Abstract model clock: a normal contraction omega = Q sqrt(diag(lams)) Q*
// with a deterministic pseudo-random eigenbasis, so that omega*omega has
// eigenvalues lams and time coordinates 1/lams.
OperatorMatrix toy_clock_map(const VecR& lams, unsigned seed);

}  // namespace tobs
