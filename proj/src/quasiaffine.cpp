#include "tobs/quasiaffine.hpp"

#include <Eigen/SVD>

namespace tobs {

Space full_line_space(const GridSpec& spec) {
  return Space{SpaceKind::full_line, spec.n_points, spec};
}
Space half_line_space(const GridSpec& spec) {
  return Space{SpaceKind::half_line, spec.half_points(), spec};
}
Space abstract_space(int dim) {
  return Space{SpaceKind::abstract_space, dim, GridSpec{}};
}

cd space_inner(const Space& s, const VecC& v, const VecC& w) {
  if (v.size() != s.dim || w.size() != s.dim)
    throw std::invalid_argument("space_inner: dimension mismatch");
  return s.weight() * v.dot(w);
}

double space_norm(const Space& s, const VecC& v) {
  return std::sqrt(std::abs(space_inner(s, v, v)));
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  if (a.domain.weight() != a.codomain.weight())
    throw std::invalid_argument("adjoint: spaces carry different weights");
  return OperatorMatrix{a.m.adjoint(), a.codomain, a.domain};
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.domain == b.codomain))
    throw std::invalid_argument("compose: space mismatch");
  return OperatorMatrix{a.m * b.m, b.domain, a.codomain};
}

double op_norm(const MatC& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<MatC> svd(m);
  return svd.singularValues()(0);
}

OperatorMatrix build_theta(const GridSpec& spec) {
  const int n = spec.n_points;
  const int h = spec.half_points();
  MatC m = MatC::Zero(h, n);
  m.rightCols(h).setIdentity();
  return OperatorMatrix{std::move(m), full_line_space(spec), half_line_space(spec)};
}

namespace {

MatC checked_energy_rep(const GridSpec& spec, const MatC& energy_rep) {
  const int h = spec.half_points();
  if (energy_rep.size() == 0) return MatC::Identity(h, h);
  if (energy_rep.rows() != h || energy_rep.cols() != h)
    throw std::invalid_argument("energy_rep: must act on the half-line space");
  const double dev = (energy_rep.adjoint() * energy_rep - MatC::Identity(h, h)).norm();
  if (dev > 1e-10 * std::sqrt(static_cast<double>(h)))
    throw std::invalid_argument("energy_rep: not unitary");
  return energy_rep;
}

OperatorMatrix build_omega(const GridSpec& spec, const MatC& energy_rep, int sign) {
  const int h = spec.half_points();
  const MatC u = checked_energy_rep(spec, energy_rep);
  const MatC p = riesz_matrix(spec, sign);
  // embed o u selects the right-half columns of the projection.
  MatC m = p.rightCols(h) * u;
  OperatorMatrix omega{std::move(m), half_line_space(spec), full_line_space(spec)};
  const double nrm = op_norm(omega.m);
  if (nrm > 1.0 + 1e-10)
    throw invariant_error("build_omega: map is not contractive");
  return omega;
}

}  // namespace

OperatorMatrix build_omega_f(const GridSpec& spec, const MatC& energy_rep) {
  return build_omega(spec, energy_rep, +1);
}

OperatorMatrix build_omega_b(const GridSpec& spec, const MatC& energy_rep) {
  return build_omega(spec, energy_rep, -1);
}

HalfLineFunction evolve_half(const HalfLineFunction& h, double t) {
  const int hp = h.spec.half_points();
  if (h.samples.size() != hp)
    throw std::invalid_argument("evolve_half: size mismatch");
  VecC out(hp);
  for (int k = 0; k < hp; ++k)
    out[k] = std::exp(cd(0.0, -h.spec.sigma(hp + k) * t)) * h.samples[k];
  return HalfLineFunction{h.spec, std::move(out)};
}

IntertwineResult intertwining_residual(const HalfLineFunction& state, double t,
                                       Direction dir) {
  if (dir == Direction::forward && t < 0.0)
    throw std::invalid_argument("intertwining_residual: forward needs t >= 0");
  if (dir == Direction::backward && t > 0.0)
    throw std::invalid_argument("intertwining_residual: backward needs t <= 0");
  const int sign = dir == Direction::forward ? +1 : -1;
  const double nrm = norm(state);
  if (nrm == 0.0)
    throw std::invalid_argument("intertwining_residual: zero state");
  const GridFunction mapped = riesz_project(embed_half(state), sign);
  auto residual_at = [&](double s) {
    const GridFunction lhs = riesz_project(embed_half(evolve_half(state, s)), sign);
    const GridFunction rhs = toeplitz_evolve(mapped, s, sign);
    return norm(GridFunction{state.spec, lhs.samples - rhs.samples}) / nrm;
  };
  return IntertwineResult{residual_at(t), residual_at(-t)};
}

double theta_contraction_bound(const GridSpec& spec, int iterations) {
  // Deterministic smooth start vector inside the positive Hardy component.
  GridFunction v = sample(spec, [&](double s) {
    const double c = spec.halfwidth / 4.0, w = spec.halfwidth / 10.0;
    return cd(std::exp(-(s - c) * (s - c) / (2.0 * w * w)), 0.0);
  });
  v = riesz_project(v, +1);
  auto apply = [&](const GridFunction& f) {
    GridFunction g = f;
    g.samples.head(spec.half_points()).setZero();
    return riesz_project(g, +1);
  };
  double lam = 0.0;
  for (int it = 0; it < iterations; ++it) {
    GridFunction w = apply(v);
    const double nw = norm(w);
    if (nw == 0.0) throw invariant_error("theta_contraction_bound: collapse");
    lam = nw / norm(v);
    w.samples /= nw;
    v = std::move(w);
  }
  return std::sqrt(lam);
}

RangeDiagnostics range_diagnostics(const OperatorMatrix& omega, double rel_tol) {
  Eigen::BDCSVD<MatC> svd(omega.m);
  const VecR s = svd.singularValues();
  RangeDiagnostics d;
  d.expected = static_cast<int>(omega.m.cols());
  d.sigma_max = s.size() ? s(0) : 0.0;
  d.sigma_min = s.size() ? s(s.size() - 1) : 0.0;
  d.tol_used = rel_tol * d.sigma_max;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > d.tol_used) ++d.rank;
  return d;
}

}  // namespace tobs
