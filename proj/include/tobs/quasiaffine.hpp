#pragma once

#include "tobs/hardy.hpp"

namespace tobs {

enum class SpaceKind { full_line, half_line, abstract_space };

struct Space {
  SpaceKind kind = SpaceKind::abstract_space;
  int dim = 0;
  GridSpec spec{};

  // Quadrature weight of the flat inner product on this space.
  double weight() const {
    return kind == SpaceKind::abstract_space ? 1.0 : spec.dsig();
  }
  bool operator==(const Space&) const = default;
};

Space full_line_space(const GridSpec& spec);
Space half_line_space(const GridSpec& spec);
Space abstract_space(int dim);

cd space_inner(const Space& s, const VecC& v, const VecC& w);
double space_norm(const Space& s, const VecC& v);

// Dense operator between two weighted spaces.
struct OperatorMatrix {
  MatC m;
  Space domain;
  Space codomain;
};

OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);
double op_norm(const MatC& m);

enum class Direction { forward, backward };

// Restriction of a full-line function to the half line.  Composed with the
// positive Riesz projection it is a quasi-affine map: injective on the Hardy
// component, dense range, norm <= 1.
OperatorMatrix build_theta(const GridSpec& spec);

// Intertwining maps from the half-line space into the Hardy components:
// omega = P_{+/-} o embed o energy_rep.  energy_rep, if nonempty, must be a
// unitary matrix on the half-line space (a choice of energy representation);
// empty means identity.
OperatorMatrix build_omega_f(const GridSpec& spec, const MatC& energy_rep = MatC());
OperatorMatrix build_omega_b(const GridSpec& spec, const MatC& energy_rep = MatC());

// Half-line multiplication evolution e^{-i sigma t}.
HalfLineFunction evolve_half(const HalfLineFunction& h, double t);

// Residuals of the one-sided intertwining relation
//   omega u(t) = T_sign(t) omega        (t >= 0 forward, t <= 0 backward).
// res_correct evaluates the relation at t, res_wrong at the time-reversed -t,
// both relative to ||state||.  The gap between them is the directional
// asymmetry of the Toeplitz compressions.
struct IntertwineResult {
  double res_correct = 0.0;
  double res_wrong = 0.0;
};
IntertwineResult intertwining_residual(const HalfLineFunction& state, double t,
                                       Direction dir);

// Lower estimate of sigma_max(theta o P_+) by power iteration on the
// compressed multiplication operator P_+ chi_{sigma>=0} P_+.
double theta_contraction_bound(const GridSpec& spec, int iterations = 600);

// Singular-value diagnostics of an intertwining map; rank is counted at
// rel_tol * sigma_max.  A rank below the half-line dimension is reported, not
// thrown: it quantifies the resolution limit of quasi-affinity on this grid.
struct RangeDiagnostics {
  int rank = 0;
  int expected = 0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double tol_used = 0.0;
  bool full_rank() const { return rank == expected; }
};
RangeDiagnostics range_diagnostics(const OperatorMatrix& omega,
                                   double rel_tol = 1e-8);

}  // namespace tobs
