// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances and grid sizes are pinned; observed values are printed
// so a failing line is diagnosable from the log alone.

#include "tobs/cauchyflow.hpp"
#include "tobs/cli.hpp"
#include "tobs/contraction.hpp"
#include "tobs/fock.hpp"
#include "tobs/fourier.hpp"
#include "tobs/qsde.hpp"
#include "tobs/rng.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace tobs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void line(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d  %-22s  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

HalfLineFunction half_gaussian(const GridSpec& g, double center, double width) {
  HalfLineFunction h = sample_half(g, [&](double s) {
    return cd(std::exp(-0.5 * (s - center) * (s - center) / (width * width)));
  });
  h.samples /= norm(h);
  return h;
}

MatC random_contraction(int n, unsigned long long seed, double gain) {
  DeterministicGaussian rng(seed);
  MatC m = rng.complex_matrix(n, n);
  return gain / op_norm(m) * m;
}

// --------------------------------------------------------------- criterion 1+2

void criteria_1_2() {
  const GridSpec g = make_grid(4096, 200.0);
  const std::vector<cd> mus = {cd(0.0, -1.0), cd(50.0, -1.0), cd(-50.0, -1.0)};

  const auto start = std::chrono::steady_clock::now();
  std::vector<XmuRow> rows;
  try {
    rows = xmu_program(g, mus);
  } catch (const std::exception& e) {
    line(1, "hardy norms", false, std::string("exception: ") + e.what());
    line(2, "norm-one limit", false, "skipped (criterion 1 threw)");
    return;
  }
  const double elapsed = seconds_since(start);

  // Independent lattice quadrature of ||psi_{-i}||^2 (the pi/2 checkpoint on
  // this grid): dsig * sum_{sigma_k >= 0} 1/(sigma_k^2 + 1).
  double oracle = 0.0;
  for (int k = g.half_points(); k < g.n_points; ++k) {
    const double s = g.sigma(k);
    oracle += 1.0 / (s * s + 1.0);
  }
  oracle *= g.dsig();

  const double nx = rows[0].norm_x_sq;
  const double npsi = rows[0].norm_psi_sq;
  const bool ok_x = std::abs(nx - M_PI) <= 0.02 * M_PI;
  const bool ok_psi = std::abs(npsi - oracle) <= 0.02 * oracle;
  const bool ok_time = elapsed < 5.0;
  line(1, "hardy norms", ok_x && ok_psi && ok_time,
       "|x|^2=" + num(nx) + " vs pi=" + num(M_PI) + " (2%), |psi|^2=" + num(npsi) +
           " vs quadrature oracle " + num(oracle) + " (2%, continuum pi/2=" +
           num(M_PI / 2) + "), " + num(elapsed) + "s < 5s");

  const bool ok_hi = rows[1].ratio >= 0.98;
  const bool ok_lo = rows[2].ratio <= 0.02;
  line(2, "norm-one limit", ok_hi && ok_lo,
       "ratio(50-i)=" + num(rows[1].ratio) + " >= 0.98, ratio(-50-i)=" +
           num(rows[2].ratio) + " <= 0.02");
}

// ----------------------------------------------------------------- criterion 3

void criterion_3(const TimeObservable& coarse) {
  const GridSpec fine_grid = make_grid(2048, 140.0);
  const TimeObservable fine = build_time_observable(
      build_omega_f(fine_grid), Side::physical, Direction::forward);

  const double lo = std::min(coarse.eigvals.minCoeff(), fine.eigvals.minCoeff());
  const double hi = std::max(coarse.eigvals.maxCoeff(), fine.eigvals.maxCoeff());
  const double lam_c = coarse.eigvals(0);
  const double lam_f = fine.eigvals(0);

  const bool ok_range = lo >= -1e-8 && hi <= 1.0 + 1e-8;
  const bool ok_monotone = lam_f >= lam_c - 1e-12;
  const bool ok_level = lam_f >= 0.95;
  line(3, "spectrum bound", ok_range && ok_monotone && ok_level,
       "eigs in [" + num(lo) + ", " + num(hi) + "] within [-1e-8, 1+1e-8], " +
           "lambda_max " + num(lam_c) + " (1024,100) -> " + num(lam_f) +
           " (2048,140), increasing and >= 0.95");
}

// ----------------------------------------------------------------- criterion 4

void criterion_4(const TimeObservable& obs_small) {
  const GridSpec gp = make_grid(256, 50.0);
  const MatC plus = riesz_matrix(gp, +1);
  const MatC minus = riesz_matrix(gp, -1);
  const MatC id = MatC::Identity(gp.n_points, gp.n_points);
  const double r_idem = op_norm(plus * plus - plus);
  const double r_compl = op_norm(plus + minus - id);
  const double r_orth = op_norm(plus * minus);

  const GridSpec g = make_grid(1024, 100.0);
  DeterministicGaussian rng(19);
  double r_pyth = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    GridFunction h{g, rng.complex_vector(g.n_points)};
    const GridFunction fp = riesz_project(h, +1);
    const GridFunction fm = riesz_project(h, -1);
    const double total = norm(h) * norm(h);
    r_pyth = std::max(r_pyth, std::abs(norm(fp) * norm(fp) +
                                       norm(fm) * norm(fm) - total) / total);
  }

  const MatC xa = spectral_projector(obs_small, SpectralInterval{1.0, 2.0, false});
  const MatC xb = spectral_projector(obs_small, SpectralInterval{2.0, kInfiniteTime, false});
  const MatC xf = spectral_projector(obs_small, SpectralInterval{1.0, kInfiniteTime, false});
  const double r_add = op_norm(xa + xb - xf);
  const double r_proj = std::max(op_norm(xa * xa - xa), op_norm(xf * xf - xf));

  const HalfLineFunction psi = half_gaussian(g, 25.0, 3.5);
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.5 * k);
  double r_flow = 0.0;
  for (const NormFlowRow& row : norm_flow_curves(psi, times))
    r_flow = std::max(r_flow, std::abs(row.n_plus + row.n_minus - 1.0));

  const double worst = std::max({r_idem, r_compl, r_orth, r_pyth, r_add, r_proj, r_flow});
  line(4, "exact identities", worst <= 1e-12,
       "P+- algebra " + num(std::max({r_idem, r_compl, r_orth})) +
           ", energy split " + num(r_pyth) + ", projector algebra " +
           num(std::max(r_add, r_proj)) + ", norm-flow pythagoras " + num(r_flow) +
           ", all <= 1e-12");
}

// ----------------------------------------------------------------- criterion 5

void criterion_5() {
  const GridSpec g = make_grid(2048, 100.0);
  const HalfLineFunction state = half_gaussian(g, 50.0, 5.0);
  double worst_res = 0.0;
  double worst_ratio = kInfiniteTime;
  for (const int k : {1, 8, 160, 795}) {
    const double t = k * g.dtau();  // bin-aligned, up to t ~ L/4
    const IntertwineResult r = intertwining_residual(state, t, Direction::forward);
    worst_res = std::max(worst_res, r.res_correct);
    worst_ratio = std::min(worst_ratio, r.res_wrong / r.res_correct);
  }
  line(5, "time asymmetry", worst_res <= 1e-6 && worst_ratio >= 1e3,
       "forward residual <= " + num(worst_res) + " (tol 1e-6), wrong-side/forward >= " +
           num(worst_ratio) + " (>= 1e3), t = k*dtau in (0, L/4]");
}

// ----------------------------------------------------------------- criterion 6

void criterion_6(const TimeObservable& fwd, const TimeObservable& bwd) {
  const GridSpec g = fwd.space().spec;
  const HalfLineFunction state = half_gaussian(g, 20.0, 4.0);

  std::vector<double> tf, tb;
  for (int k = 0; k <= 10; ++k) {
    tf.push_back(5.0 * k);
    tb.push_back(-5.0 * k);
  }
  const FlowResult a = spectral_flow_experiment(fwd, state, 2.0, tf, 0.3);
  const FlowResult b = spectral_flow_experiment(bwd, state, 2.0, tb, 0.3);

  const bool ok_f = a.crossed && a.first_crossing <= 50.0 &&
                    a.max_mass_low <= a.curve.front().mass_low + 1e-10;
  const bool ok_b = b.crossed && std::abs(b.first_crossing) <= 50.0 &&
                    b.max_mass_low <= b.curve.front().mass_low + 1e-10;
  line(6, "spectral flow", ok_f && ok_b,
       "forward: mass in [1,2) drops below 0.3 at t=" + num(a.first_crossing) +
           ", no rise above start; backward mirror at t=" + num(b.first_crossing));
}

// ----------------------------------------------------------------- criterion 7

void criterion_7() {
  const GridSpec g = make_grid(512, 50.0);
  const OperatorMatrix omega = build_omega_f(g);
  const double r1 = resolvent_residual(omega, cd(2.0, 0.0));
  const double r2 = resolvent_residual(omega, cd(1.0, 1.0));
  line(7, "resolvent identity", r1 <= 1e-9 && r2 <= 1e-9,
       "residual(z=2)=" + num(r1) + ", residual(z=1+i)=" + num(r2) + ", tol 1e-9");
}

// ----------------------------------------------------------------- criterion 8

void criterion_8(const OperatorMatrix& omega) {
  const MatC c = random_contraction(6, 33, 0.9);
  const MatC theta0 = characteristic_function(c, cd(0.0, 0.0));
  const MatC ref = -(defect(c.adjoint()).basis.adjoint() * c * defect(c).basis);
  const double r_exact = (theta0 - ref).norm();

  double worst = 0.0, worst_incl = 0.0;
  for (const cd lam : {cd(0.0, 0.0), cd(0.3, 0.2), cd(0.0, -0.5)}) {
    const CharIntertwineResult r = char_intertwine_residual(omega, lam, 1e-4);
    worst = std::max({worst, r.res_map, r.res_adjoint});
    worst_incl = std::max(worst_incl, r.inclusion);
  }

  const MatC clock = compose(adjoint(omega), omega).m;
  const VecR angles = principal_angles(defect(clock, 1e-4).basis,
                                       defect(omega.m, 1e-4).basis);
  const double worst_angle = angles.size() > 0 ? angles.maxCoeff() : 0.0;

  line(8, "characteristic suite",
       r_exact == 0.0 && worst <= 1e-7 && worst_incl <= 1e-6 && worst_angle <= 1e-6,
       "theta(0)+C diff=" + num(r_exact) + " (exact), transport residuals <= " +
           num(worst) + " (tol 1e-7, inclusion " + num(worst_incl) +
           "), defect-basis angles <= " + num(worst_angle) + " (tol 1e-6)");
}

// ----------------------------------------------------------------- criterion 9

void criterion_9() {
  const FockSpec f = make_fock(4, 4);
  DeterministicGaussian rng(83);
  MatC omega = rng.complex_matrix(4, 4);
  omega *= 0.8 / op_norm(omega);
  const VecC u = rng.complex_vector(4);
  const VecC v = 0.7 * rng.complex_vector(4);
  const MatC p = level_projector(f, 3);

  const MatC cu = creation(f, u);
  const MatC av = annihilation(f, v);
  const double r_ccr =
      ((av * cu - cu * av - v.dot(u) * MatC::Identity(f.dim(), f.dim())) * p).norm() /
      (u.norm() * v.norm());

  cd series = 0.0;
  cd term = 1.0;
  for (int n = 1; n <= f.n_max; ++n) {
    term *= u.dot(v) / double(n);
    series += term;
  }
  series += 1.0;
  const cd gram = exp_vector(f, u).dot(exp_vector(f, v));
  const double r_gram = std::abs(gram - series);

  const MatC go = second_quantization(f, omega);
  const VecC ev = exp_vector(f, v);
  const double r_exp = (go * ev - exp_vector(f, VecC(omega * v))).norm();

  const VecC c_lhs = go * (cu * ev);
  const VecC c_rhs = creation(f, VecC(omega * u)) * (go * ev);
  const double r_cre = (c_lhs - c_rhs).norm() / c_lhs.norm();

  const VecC a_lhs = p * (go * (annihilation(f, u) * ev));
  const VecC a_rhs = p * (annihilation(f, VecC(omega * u)) * (go * ev));
  const cd coeff = u.dot(v) - (omega * u).dot(omega * v);
  const double r_ann =
      (a_lhs - a_rhs - coeff * (p * exp_vector(f, VecC(omega * v)))).norm();

  const double worst = std::max({r_ccr, r_gram, r_exp, r_cre, r_ann});
  line(9, "fock suite", worst <= 1e-12,
       "(d,n_max)=(4,4): ccr " + num(r_ccr) + ", gram series " + num(r_gram) +
           ", Gamma(C)e(u)=e(Cu) " + num(r_exp) + ", creation intertwine " +
           num(r_cre) + ", annihilation discrepancy " + num(r_ann) +
           ", all <= 1e-12");
}

// ---------------------------------------------------------------- criterion 10

void criterion_10(const OperatorMatrix& omega, const TimeObservable& phys,
                  const TimeObservable& hardy) {
  VecR lams(4);
  lams << 1.0, 0.8, 0.5, 0.2;
  const OperatorMatrix toy = toy_clock_map(lams, 5);
  const TimeObservable toy_obs =
      build_time_observable(toy, Side::physical, Direction::forward);
  DeterministicGaussian rng(29);
  const Martingale toy_mart = make_martingale(toy_obs, rng.complex_vector(4));
  double r_nest = 0.0;
  for (const double t : {0.3, 1.2, 4.0})
    for (const double s : {0.3, 1.2, 4.0}) {
      if (s > t) continue;
      const VecC mt = martingale_at(toy_mart, t);
      const VecC ms = martingale_at(toy_mart, s);
      const MatC ps = spectral_projector(toy_obs, SpectralInterval{1.0, 1.0 + s, true});
      r_nest = std::max(r_nest, (ps * mt - ms).norm() / mt.norm());
    }

  // Lemma 3 transport on the grid, at windows whose upper cut sits in a
  // spectral gap (the t = 0 atom cuts a quasi-degenerate cluster at
  // eigenvalue 1 and is excluded; see the unit suite for the stable
  // containment form of that case).
  DeterministicGaussian vgen(91);
  const VecC v = vgen.complex_vector(phys.dim());
  const Martingale mart = make_martingale(phys, v);
  double r_transport = 0.0;
  for (const double t : {0.5, 2.0, 7.0}) {
    const VecC moved = omega.m * martingale_at(mart, t);
    const MatC xi_hat = spectral_projector(hardy, SpectralInterval{1.0, 1.0 + t, true});
    const VecC direct = xi_hat * (omega.m * v);
    r_transport = std::max(r_transport,
                           space_norm(omega.codomain, VecC(moved - direct)) /
                               space_norm(omega.domain, v));
  }

  const MatC k = phys.inverse_op.m * phys.inverse_op.m;
  const MatC k_hat = hat_operator(k, omega);
  const double r_norm = std::abs(op_norm(k_hat) - op_norm(k));
  const MatC xi_hat2 = spectral_projector(hardy, SpectralInterval{1.0, 2.0, false});
  const double r_comm = (k_hat * xi_hat2 - xi_hat2 * k_hat).norm();
  const double r_adj = (adjoint(omega).m * k_hat - k * adjoint(omega).m).norm();

  line(10, "martingale suite",
       r_nest <= 1e-12 && r_transport <= 1e-8 && r_norm <= 1e-10 &&
           r_comm <= 1e-8 && r_adj <= 1e-8,
       "nesting " + num(r_nest) + " (1e-12), grid transport " + num(r_transport) +
           " (1e-8), hat norm drift " + num(r_norm) + " (1e-10), hat commutation " +
           num(r_comm) + ", adjoint relation " + num(r_adj) + " (1e-8)");
}

// ---------------------------------------------------------------- criterion 11

Martingale qsde_clock(const VecR& lams, unsigned seed, OperatorMatrix* omega_out) {
  OperatorMatrix omega = toy_clock_map(lams, seed);
  const TimeObservable obs =
      build_time_observable(omega, Side::physical, Direction::forward);
  DeterministicGaussian gen(seed + 1);
  VecC v = gen.complex_vector(static_cast<int>(lams.size()));
  v /= v.norm();
  if (omega_out) *omega_out = omega;
  return make_martingale(obs, v);
}

std::vector<double> linspace(double tmax, int steps) {
  std::vector<double> t;
  for (int k = 0; k <= steps; ++k) t.push_back(tmax * k / steps);
  return t;
}

void criterion_11() {
  const MatC h = (MatC(2, 2) << cd(0.3), cd(0.1), cd(0.1), cd(-0.2)).finished();
  VecR toy3(3);
  toy3 << 0.9, 0.5, 0.2;

  // Vanishing-noise family: the path must match exp(-i H c(t)) (x) 1.
  OperatorMatrix toy_omega;
  const Martingale clock = qsde_clock(toy3, 11, &toy_omega);
  const auto start = std::chrono::steady_clock::now();
  const ProcessSpec solvable =
      make_process_spec(MatC::Zero(2, 2), MatC::Identity(2, 2), h, clock, 3,
                        linspace(5.0, 200));
  const PathResult path = integrate(solvable, Side::physical);
  const double elapsed = seconds_since(start);

  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  const int fd = solvable.fock.dim();
  MatC exact = MatC::Zero(2 * fd, 2 * fd);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cd sys = 0.0;
      for (int w = 0; w < 2; ++w)
        sys += es.eigenvectors()(i, w) *
               std::exp(cd(0.0, -es.eigenvalues()(w) * path.clock_curve.back())) *
               std::conj(es.eigenvectors()(j, w));
      exact.block(i * fd, j * fd, fd, fd) = sys * MatC::Identity(fd, fd);
    }
  const double err = op_norm(path.unitaries.back() - exact);
  const bool ok_solvable = err <= 10.0 * 5.0 / 200.0;
  const bool ok_time = elapsed < 120.0;

  // Drift halving on a dense clock, vanishing-noise family (L=0, S=1): the
  // Euler drift is then purely the O(dt^2)-per-step phase error and halves
  // cleanly with dt even at coarse step counts.
  VecR dense(128);
  for (int j = 0; j < 128; ++j)
    dense(j) = 1.0 / (1.0 + (0.05 + 4.9 * (j + 0.5) / 128.0));
  const Martingale dense_clock = qsde_clock(dense, 11, nullptr);
  std::vector<double> drifts;
  for (const int steps : {4, 8, 16}) {
    const ProcessSpec spec =
        make_process_spec(MatC::Zero(2, 2), MatC::Identity(2, 2), h, dense_clock,
                          1, linspace(5.0, steps));
    drifts.push_back(integrate(spec, Side::physical).unitarity_drift);
  }
  const double f1 = drifts[0] / drifts[1];
  const double f2 = drifts[1] / drifts[2];
  const bool ok_halving = f1 >= 1.5 && f1 <= 3.0 && f2 >= 1.5 && f2 <= 3.0;

  // Bracket-clock identity along a generic path.
  const MatC l = (MatC(2, 2) << cd(0.2), cd(0.05), cd(-0.1), cd(0.15)).finished();
  const double th = 0.4;
  const MatC s = (MatC(2, 2) << cd(std::cos(th)), cd(-std::sin(th)),
                  cd(std::sin(th)), cd(std::cos(th))).finished();
  const ProcessSpec generic =
      make_process_spec(l, s, h, clock, 3, linspace(2.0, 100));
  const ProcessSpec hat_spec = rewrite_hat(generic, toy_omega);
  const PathResult phys_path = integrate(generic, Side::physical);
  const PathResult hat_path = integrate(hat_spec, Side::hardy);
  DeterministicGaussian gen(13);
  std::vector<Probe> probes;
  for (int i = 0; i < 2; ++i) {
    Probe probe;
    probe.h = gen.complex_vector(2);
    probe.h /= probe.h.norm();
    probe.hp = gen.complex_vector(2);
    probe.hp /= probe.hp.norm();
    probe.u = gen.complex_vector(3);
    probe.u *= 0.7 / probe.u.norm();
    probe.up = gen.complex_vector(3);
    probe.up *= 0.7 / probe.up.norm();
    probes.push_back(std::move(probe));
  }
  const DiagnosticsReport rep = intertwining_diagnostics(
      generic, hat_spec, phys_path, hat_path, toy_omega, probes);
  const bool ok_bracket = rep.bracket_residual <= 1e-10;

  line(11, "qsde suite", ok_solvable && ok_time && ok_halving && ok_bracket,
       "closed-form err " + num(err) + " <= 10*dt=0.25 in " + num(elapsed) +
           "s < 120s, halving factors " + num(f1) + ", " + num(f2) +
           " in [1.5,3], bracket residual " + num(rep.bracket_residual) +
           " <= 1e-10");
}

// ---------------------------------------------------------------- criterion 12

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_12() {
  const fs::path cfgdir(TOBS_CONFIG_DIR);
  const fs::path out = fs::temp_directory_path() / "tobs_acceptance";
  fs::create_directories(out);

  int replayed = 0;
  std::string first_failure;
  for (const auto& entry : fs::directory_iterator(cfgdir)) {
    const std::string name = entry.path().stem().string();
    if (entry.path().extension() != ".json" || name == "schema") continue;

    json cfg;
    std::ifstream(entry.path()) >> cfg;
    const std::string experiment = cfg.at("experiment");
    const fs::path data = out / (name + ".csv");
    cfg["output"]["path"] = data.string();
    const fs::path cfg_copy = out / (name + ".json");
    std::ofstream(cfg_copy) << cfg.dump(2) << "\n";

    const std::string cmd = std::string(TOBS_CLI_PATH) + " " + experiment +
                            " --config " + cfg_copy.string() + " > /dev/null 2>&1";
    bool ok = true;
    std::string reason;
    std::string bytes, manifest;
    for (int run = 0; run < 2 && ok; ++run) {
      const int status = std::system(cmd.c_str());
      if (status == -1 || WEXITSTATUS(status) != 0) {
        ok = false;
        reason = name + " exited " + std::to_string(WEXITSTATUS(status));
        break;
      }
      const std::string d = slurp(data);
      const std::string m = slurp(data.string() + ".manifest.json");
      if (run == 0) {
        bytes = d;
        manifest = m;
        if (d.find("nan") != std::string::npos) {
          ok = false;
          reason = name + " output contains nan";
        }
      } else if (d != bytes || m != manifest) {
        ok = false;
        reason = name + " rerun differs";
      }
    }
    if (ok)
      ++replayed;
    else if (first_failure.empty())
      first_failure = reason;
  }

  line(12, "cli reproducibility", first_failure.empty() && replayed > 0,
       first_failure.empty()
           ? std::to_string(replayed) + " checked-in configs replayed byte-identically"
           : first_failure);
}

template <typename F>
void guarded(int id, const char* name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    line(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, "hardy norms", [] { criteria_1_2(); });

  const GridSpec g1024 = make_grid(1024, 100.0);
  const TimeObservable fwd = build_time_observable(build_omega_f(g1024),
                                                   Side::physical, Direction::forward);
  const TimeObservable bwd = build_time_observable(build_omega_b(g1024),
                                                   Side::physical, Direction::backward);
  guarded(3, "spectrum bound", [&] { criterion_3(fwd); });

  const GridSpec g256 = make_grid(256, 50.0);
  const OperatorMatrix omega256 = build_omega_f(g256);
  const TimeObservable obs256 = build_time_observable(omega256, Side::physical,
                                                      Direction::forward);
  guarded(4, "exact identities", [&] { criterion_4(obs256); });
  guarded(5, "time asymmetry", [] { criterion_5(); });
  guarded(6, "spectral flow", [&] { criterion_6(fwd, bwd); });
  guarded(7, "resolvent identity", [] { criterion_7(); });
  guarded(8, "characteristic suite", [&] { criterion_8(omega256); });
  guarded(9, "fock suite", [] { criterion_9(); });

  const GridSpec g256_20 = make_grid(256, 20.0);
  const OperatorMatrix omega_small = build_omega_f(g256_20);
  const TimeObservable phys_small = build_time_observable(omega_small, Side::physical,
                                                          Direction::forward);
  const TimeObservable hardy_small = build_time_observable(omega_small, Side::hardy,
                                                           Direction::forward);
  guarded(10, "martingale suite",
          [&] { criterion_10(omega_small, phys_small, hardy_small); });
  guarded(11, "qsde suite", [] { criterion_11(); });
  guarded(12, "cli reproducibility", [] { criterion_12(); });

  std::printf("acceptance: %d/12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
