#include "tobs/timeobs.hpp"

#include <Eigen/Eigenvalues>

namespace tobs {

TimeObservable build_time_observable(const OperatorMatrix& omega, Side side,
                                     Direction direction) {
  OperatorMatrix inv;
  if (side == Side::physical)
    inv = compose(adjoint(omega), omega);
  else
    inv = compose(omega, adjoint(omega));
  inv.m = 0.5 * (inv.m + inv.m.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<MatC> es(inv.m);
  if (es.info() != Eigen::Success)
    throw invariant_error("build_time_observable: eigensolver failed");

  const int n = static_cast<int>(inv.m.rows());
  TimeObservable obs;
  obs.inverse_op = std::move(inv);
  obs.eigvals = VecR(n);
  obs.eigvecs = MatC(n, n);
  for (int j = 0; j < n; ++j) {
    // descending order
    obs.eigvals(j) = es.eigenvalues()(n - 1 - j);
    obs.eigvecs.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  obs.side = side;
  obs.direction = direction;
  if (obs.eigvals(n - 1) < -1e-8 || obs.eigvals(0) > 1.0 + 1e-8)
    throw invariant_error("build_time_observable: spectrum escapes [0,1]");
  return obs;
}

MatC spectral_projector(const TimeObservable& obs, const SpectralInterval& e) {
  if (!(e.lo >= 1.0) || e.hi < e.lo || (e.hi == e.lo && !e.include_hi))
    throw std::invalid_argument("spectral_projector: window must satisfy 1 <= lo <= hi");
  const int n = obs.dim();
  MatC p = MatC::Zero(n, n);
  for (int j = 0; j < n; ++j)
    if (e.contains(obs.time_coordinate(j)))
      p += obs.eigvecs.col(j) * obs.eigvecs.col(j).adjoint();
  return p;
}

double transport_residual(const TimeObservable& phys, const TimeObservable& hardy,
                          const OperatorMatrix& omega, const SpectralInterval& e) {
  if (phys.side != Side::physical || hardy.side != Side::hardy)
    throw std::invalid_argument("transport_residual: sides must be physical, hardy");
  if (!(phys.space() == omega.domain) || !(hardy.space() == omega.codomain))
    throw std::invalid_argument("transport_residual: observables do not match omega");
  const MatC p = spectral_projector(phys, e);
  const MatC ph = spectral_projector(hardy, e);
  const double denom = op_norm(omega.m);
  return op_norm(omega.m * p - ph * omega.m) / denom;
}

double resolvent_residual(const OperatorMatrix& omega, cd z) {
  const double re = std::clamp(z.real(), 0.0, 1.0);
  if (std::abs(z - cd(re, 0.0)) < 0.1)
    throw std::invalid_argument("resolvent_residual: z must stay 0.1 away from [0,1]");
  const MatC t_inv = (adjoint(omega).m * omega.m).eval();
  const MatC t_hat_inv = (omega.m * adjoint(omega).m).eval();
  const int n = static_cast<int>(t_inv.rows());
  const int nh = static_cast<int>(t_hat_inv.rows());
  const MatC r = (t_inv - z * MatC::Identity(n, n)).partialPivLu().solve(MatC::Identity(n, n));
  const MatC rh = (t_hat_inv - z * MatC::Identity(nh, nh)).partialPivLu().solve(MatC::Identity(nh, nh));
  return op_norm(omega.m * r - rh * omega.m) / (op_norm(r) * op_norm(omega.m));
}

std::vector<XmuRow> xmu_program(const GridSpec& spec, const std::vector<cd>& mu_list) {
  std::vector<XmuRow> rows;
  rows.reserve(mu_list.size());
  for (const cd mu : mu_list) {
    if (!(mu.imag() < 0.0))
      throw std::invalid_argument("xmu_program: mu must lie in the lower half plane");
    const GridFunction x = sample(spec, [&](double s) { return 1.0 / (cd(s, 0.0) - mu); });
    const GridFunction px = riesz_project(x, +1);
    const HalfLineFunction psi = restrict_half(px, RestrictMode::lax);
    XmuRow row;
    row.mu = mu;
    row.norm_x_sq = inner(x, x).real();
    row.norm_psi_sq = inner(psi, psi).real();
    row.ratio = row.norm_psi_sq / row.norm_x_sq;
    // direct lattice quadrature of the continuum half-line restriction
    double acc = 0.0;
    for (int k = spec.half_points(); k < spec.n_points; ++k)
      acc += std::norm(1.0 / (cd(spec.sigma(k), 0.0) - mu));
    row.oracle_psi_sq = spec.dsig() * acc;
    rows.push_back(row);
  }
  return rows;
}

FlowResult spectral_flow_experiment(const TimeObservable& obs,
                                    const HalfLineFunction& state, double a,
                                    const std::vector<double>& times,
                                    double threshold) {
  if (!(a > 1.0))
    throw std::invalid_argument("spectral_flow_experiment: need a > 1");
  if (obs.space().kind != SpaceKind::half_line)
    throw std::invalid_argument("spectral_flow_experiment: needs a half-line observable");
  if (!(half_line_space(state.spec) == obs.space()))
    throw std::invalid_argument("spectral_flow_experiment: state/observable mismatch");
  const SpectralInterval low{1.0, a, false};
  const SpectralInterval high{a, kInfiniteTime, false};
  const MatC p_low = spectral_projector(obs, low);
  const MatC p_high = spectral_projector(obs, high);

  VecC g = p_low * state.samples;
  const double g_norm = space_norm(obs.space(), g);
  if (g_norm < 1e-12 * space_norm(obs.space(), state.samples))
    throw invariant_error("spectral_flow_experiment: state has no early-time mass");
  g /= g_norm;

  const double time_sign = obs.direction == Direction::forward ? 1.0 : -1.0;
  FlowResult result;
  for (const double t : times) {
    if (time_sign * t < 0.0)
      throw std::invalid_argument("spectral_flow_experiment: time runs against the observable direction");
    const HalfLineFunction evolved = evolve_half(HalfLineFunction{state.spec, g}, t);
    FlowRow row;
    row.t = t;
    const double ml = space_norm(obs.space(), p_low * evolved.samples);
    const double mh = space_norm(obs.space(), p_high * evolved.samples);
    row.mass_low = ml * ml;
    row.mass_high = mh * mh;
    result.curve.push_back(row);
    result.max_mass_low = std::max(result.max_mass_low, row.mass_low);
    if (!result.crossed && row.mass_low <= threshold) {
      result.crossed = true;
      result.first_crossing = t;
    }
  }
  return result;
}

}  // namespace tobs
