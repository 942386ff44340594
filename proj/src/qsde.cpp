#include "tobs/qsde.hpp"

#include "tobs/rng.hpp"

#include <Eigen/QR>

#include <algorithm>

namespace tobs {

namespace {

MatC kron(const MatC& a, const MatC& b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

VecC kron_vec(const VecC& a, const VecC& b) {
  VecC out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

void check_square(const MatC& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument(std::string(what) + ": wrong dimension");
}

}  // namespace

ProcessSpec make_process_spec(const MatC& l, const MatC& s, const MatC& h,
                              const Martingale& clock, int n_max,
                              const std::vector<double>& time_grid,
                              const MatC& gauge) {
  ProcessSpec spec;
  spec.sys_l = l;
  spec.sys_s = s;
  spec.sys_h = h;
  spec.clock = clock;
  const int base = clock.obs.dim();
  spec.gauge = gauge.size() == 0 ? MatC(MatC::Identity(base, base)) : gauge;
  spec.fock = make_fock(base, n_max);
  spec.time_grid = time_grid;
  spec.side = clock.obs.side == Side::physical ? Side::physical : Side::hardy;
  validate_process_spec(spec);
  return spec;
}

void validate_process_spec(const ProcessSpec& spec) {
  const int d = spec.system_dim();
  check_square(spec.sys_l, d, "ProcessSpec.L");
  check_square(spec.sys_s, d, "ProcessSpec.S");
  check_square(spec.sys_h, d, "ProcessSpec.H");
  const int base = spec.clock.obs.dim();
  check_square(spec.gauge, base, "ProcessSpec.P");
  if (spec.fock.base_dim != base)
    throw std::invalid_argument("ProcessSpec: fock base does not match the clock");
  if (spec.clock.obs.space().kind != SpaceKind::abstract_space)
    throw std::invalid_argument("ProcessSpec: clock must live on a weight-1 space");

  if ((spec.sys_h - spec.sys_h.adjoint().eval()).norm() > 1e-10)
    throw std::invalid_argument("ProcessSpec: H is not Hermitian");
  if ((spec.sys_s.adjoint() * spec.sys_s - MatC::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("ProcessSpec: S is not unitary");
  if ((spec.gauge * spec.gauge - spec.gauge).norm() > 1e-10 ||
      (spec.gauge - spec.gauge.adjoint().eval()).norm() > 1e-10)
    throw std::invalid_argument("ProcessSpec: P is not an orthogonal projection");
  const MatC t_inv = spec.clock.obs.inverse_op.m;
  if ((spec.gauge * t_inv - t_inv * spec.gauge).norm() > 1e-8)
    throw std::invalid_argument("ProcessSpec: P does not commute with the clock");

  if (spec.time_grid.empty())
    throw std::invalid_argument("ProcessSpec: empty time grid");
  if (spec.time_grid.front() != 0.0)
    throw std::invalid_argument("ProcessSpec: time grid must start at 0");
  for (size_t k = 1; k < spec.time_grid.size(); ++k)
    if (!(spec.time_grid[k] > spec.time_grid[k - 1]))
      throw std::invalid_argument("ProcessSpec: time grid must increase");
  // Image-side specs carry a numerically transported gauge, so the fixed-point
  // identity is only required to transport accuracy there.
  const double fix_tol = spec.side == Side::physical ? 1e-10 : 1e-8;
  for (const double t : spec.time_grid) {
    const VecC mt = martingale_at(spec.clock, t);
    if ((spec.gauge * mt - mt).norm() > fix_tol)
      throw std::invalid_argument("ProcessSpec: P m_t = m_t fails on the grid");
  }
}

PathResult integrate(const ProcessSpec& spec, Side side) {
  if (side != spec.side)
    throw std::invalid_argument("integrate: side does not match the specification");
  validate_process_spec(spec);

  const int d = spec.system_dim();
  const int df = spec.fock.dim();
  const int dim = d * df;
  const MatC isys = MatC::Identity(d, d);
  const MatC ifock = MatC::Identity(df, df);
  const MatC ls = spec.sys_l.adjoint() * spec.sys_s;
  const MatC k0 = cd(0.0, 1.0) * spec.sys_h + 0.5 * spec.sys_l.adjoint() * spec.sys_l;
  const MatC id = MatC::Identity(dim, dim);

  PathResult path;
  path.times = spec.time_grid;
  path.unitaries.reserve(spec.time_grid.size());
  path.unitaries.push_back(id);
  path.drift_curve.push_back(0.0);

  VecC m_prev = martingale_at(spec.clock, spec.time_grid.front());
  double c_prev = space_inner(spec.clock.obs.space(), m_prev, m_prev).real();
  path.clock_curve.push_back(c_prev);
  auto window = [&](double t) {
    return spectral_projector(spec.clock.obs, SpectralInterval{1.0, 1.0 + t, true});
  };
  MatC xi_prev = window(spec.time_grid.front());

  for (size_t k = 0; k + 1 < spec.time_grid.size(); ++k) {
    const VecC m_next = martingale_at(spec.clock, spec.time_grid[k + 1]);
    const MatC xi_next = window(spec.time_grid[k + 1]);
    const VecC dm = m_next - m_prev;
    const MatC dxi = xi_next - xi_prev;
    const double c_next =
        space_inner(spec.clock.obs.space(), m_next, m_next).real();
    const double dc = c_next - c_prev;

    const MatC gen = kron(spec.sys_l, creation(spec.fock, dm)) +
                     kron(spec.sys_s - isys, conservation(spec.fock, spec.gauge * dxi)) -
                     kron(ls, annihilation(spec.fock, dm)) -
                     dc * kron(k0, ifock);
    path.unitaries.push_back(path.unitaries.back() + gen * path.unitaries.back());

    const MatC& u = path.unitaries.back();
    const double drift = op_norm(u.adjoint() * u - id);
    path.drift_curve.push_back(drift);
    path.unitarity_drift = std::max(path.unitarity_drift, drift);
    path.clock_curve.push_back(c_next);
    m_prev = m_next;
    xi_prev = xi_next;
    c_prev = c_next;
  }
  return path;
}

ProcessSpec rewrite_hat(const ProcessSpec& spec, const OperatorMatrix& omega) {
  if (spec.side != Side::physical)
    throw std::invalid_argument("rewrite_hat: specification is already image-side");
  if (omega.domain.dim != spec.clock.obs.dim())
    throw std::invalid_argument("rewrite_hat: omega does not act on the clock space");
  if (omega.codomain.kind != SpaceKind::abstract_space)
    throw std::invalid_argument("rewrite_hat: image base must be a weight-1 space");

  const TimeObservable hat_obs =
      build_time_observable(omega, Side::hardy, spec.clock.obs.direction);
  const VecC v_hat = omega.m * spec.clock.generator;
  const MatC p_hat = hat_operator(spec.gauge, omega);

  ProcessSpec out = spec;
  out.clock = make_martingale(hat_obs, v_hat);
  out.gauge = p_hat;
  out.fock = make_fock(omega.codomain.dim, spec.fock.n_max);
  out.side = Side::hardy;

  const MatC t_hat = hat_obs.inverse_op.m;
  if ((p_hat * t_hat - t_hat * p_hat).norm() > 1e-8)
    throw invariant_error("rewrite_hat: transported P fails to commute");
  for (const double t : out.time_grid) {
    const VecC mt = martingale_at(out.clock, t);
    if ((p_hat * mt - mt).norm() > 1e-8)
      throw invariant_error("rewrite_hat: transported P does not fix m_t");
  }
  return out;
}

DiagnosticsReport intertwining_diagnostics(const ProcessSpec& phys_spec,
                                           const ProcessSpec& hat_spec,
                                           const PathResult& phys,
                                           const PathResult& hat,
                                           const OperatorMatrix& omega,
                                           const std::vector<Probe>& probes) {
  if (hat_spec.side != Side::hardy)
    throw std::invalid_argument("intertwining_diagnostics: second spec must be image-side");
  if (phys.times != hat.times)
    throw std::invalid_argument("intertwining_diagnostics: time grids differ");
  if ((phys_spec.sys_h - hat_spec.sys_h).norm() != 0.0 ||
      (phys_spec.sys_l - hat_spec.sys_l).norm() != 0.0 ||
      (phys_spec.sys_s - hat_spec.sys_s).norm() != 0.0)
    throw std::invalid_argument("intertwining_diagnostics: system operators differ");

  DiagnosticsReport rep;
  rep.times = phys.times;

  const MatC t_inv = phys_spec.clock.obs.inverse_op.m;
  for (size_t k = 0; k < phys.times.size(); ++k) {
    const double t = phys.times[k];
    const VecC mt = martingale_at(phys_spec.clock, t);
    const double b_phys =
        space_inner(phys_spec.clock.obs.space(), VecC(t_inv * mt), mt).real();
    const double b_hat =
        bracket_measure(hat_spec.clock, hat_spec.clock, t).real();
    rep.bracket_phys.push_back(b_phys);
    rep.bracket_hat.push_back(b_hat);
    rep.bracket_residual = std::max(rep.bracket_residual, std::abs(b_hat - b_phys));
  }

  for (const Probe& probe : probes) {
    if (probe.h.size() != phys_spec.system_dim() ||
        probe.hp.size() != phys_spec.system_dim() ||
        probe.u.size() != phys_spec.clock.obs.dim() ||
        probe.up.size() != phys_spec.clock.obs.dim())
      throw std::invalid_argument("intertwining_diagnostics: probe dimensions");
    ProbeCurve curve;
    const VecC left_phys = kron_vec(probe.h, exp_vector(phys_spec.fock, probe.u));
    const VecC right_phys = kron_vec(probe.hp, exp_vector(phys_spec.fock, probe.up));
    const VecC u_hat = omega.m * probe.u;
    const VecC up_hat = omega.m * probe.up;
    const VecC left_hat = kron_vec(probe.h, exp_vector(hat_spec.fock, u_hat));
    const VecC right_hat = kron_vec(probe.hp, exp_vector(hat_spec.fock, up_hat));
    curve.gram_phys0 = exp_vector(phys_spec.fock, probe.u)
                           .dot(exp_vector(phys_spec.fock, probe.up)) *
                       probe.h.dot(probe.hp);
    curve.gram_hat0 = exp_vector(hat_spec.fock, u_hat)
                          .dot(exp_vector(hat_spec.fock, up_hat)) *
                      probe.h.dot(probe.hp);
    for (size_t k = 0; k < phys.times.size(); ++k) {
      curve.m_phys.push_back(left_phys.dot(phys.unitaries[k] * right_phys));
      curve.m_hat.push_back(left_hat.dot(hat.unitaries[k] * right_hat));
    }
    rep.gram0_residual =
        std::max({rep.gram0_residual, std::abs(curve.m_phys.front() - curve.gram_phys0),
                  std::abs(curve.m_hat.front() - curve.gram_hat0)});
    rep.probes.push_back(std::move(curve));
  }
  return rep;
}

OperatorMatrix toy_clock_map(const VecR& lams, unsigned seed) {
  const int n = static_cast<int>(lams.size());
  if (n < 1) throw std::invalid_argument("toy_clock_map: empty spectrum");
  for (int i = 0; i < n; ++i)
    if (!(lams(i) > 0.0) || lams(i) > 1.0)
      throw std::invalid_argument("toy_clock_map: eigenvalues must lie in (0,1]");

  DeterministicGaussian gen(seed);
  const MatC x = gen.complex_matrix(n, n);
  Eigen::HouseholderQR<MatC> qr(x);
  const MatC q = qr.householderQ() * MatC::Identity(n, n);

  VecC roots(n);
  for (int i = 0; i < n; ++i) roots[i] = std::sqrt(lams(i));
  MatC m = q * roots.asDiagonal() * q.adjoint();
  return OperatorMatrix{std::move(m), abstract_space(n), abstract_space(n)};
}

}  // namespace tobs
