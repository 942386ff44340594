#include "tobs/cli.hpp"

#include "tobs/cauchyflow.hpp"
#include "tobs/contraction.hpp"
#include "tobs/qsde.hpp"
#include "tobs/rng.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fftw3.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace tobs {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- formatting

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Cell {
  bool is_text = false;
  std::string text;
  double value = 0.0;
};
Cell num(double x) { return Cell{false, {}, x}; }
Cell txt(std::string s) { return Cell{true, std::move(s), 0.0}; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string table_csv(const Table& t) {
  std::ostringstream out;
  for (size_t c = 0; c < t.columns.size(); ++c)
    out << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      out << (row[c].is_text ? row[c].text : fmt17(row[c].value));
      out << (c + 1 < row.size() ? "," : "\n");
    }
  }
  return out.str();
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json jr = json::array();
    for (const auto& cell : row) {
      if (cell.is_text)
        jr.push_back(cell.text);
      else
        jr.push_back(cell.value);
    }
    rows.push_back(std::move(jr));
  }
  return json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

struct Invariant {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "in_unit", "report"
  bool pass = true;
};

Invariant check_le(std::string name, double value, double bound) {
  return Invariant{std::move(name), value, bound, "<=", value <= bound};
}
Invariant check_ge(std::string name, double value, double bound) {
  return Invariant{std::move(name), value, bound, ">=", value >= bound};
}
Invariant report(std::string name, double value) {
  return Invariant{std::move(name), value, 0.0, "report", true};
}

json manifest_json(const json& config, const std::vector<Invariant>& invariants) {
  json inv = json::array();
  bool all = true;
  for (const auto& i : invariants) {
    inv.push_back(json{{"name", i.name},
                       {"value", i.value},
                       {"bound", i.bound},
                       {"relation", i.relation},
                       {"pass", i.pass}});
    all = all && i.pass;
  }
  return json{{"artifact",
               json{{"name", "tobs"},
                    {"version", kArtifactVersion},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"fftw", std::string(fftw_version)}}},
              {"config", config},
              {"invariants", std::move(inv)},
              {"all_pass", all}};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << contents;
}

// ------------------------------------------------------------- config access

double num_at(const json& j, const char* key) { return j.at(key).get<double>(); }
int int_at(const json& j, const char* key) { return j.at(key).get<int>(); }

GridSpec grid_of(const json& config) {
  const json& g = config.at("grid");
  return make_grid(int_at(g, "n_points"), num_at(g, "halfwidth"));
}

HalfLineFunction half_gaussian(const GridSpec& spec, double center, double width) {
  HalfLineFunction h = sample_half(spec, [&](double s) {
    const double d = (s - center) / width;
    return cd(std::exp(-0.5 * d * d), 0.0);
  });
  const double n = norm(h);
  if (n == 0.0) throw ConfigError("state: gaussian vanishes on this grid");
  h.samples /= n;
  return h;
}

cd parse_complex(const json& j, const char* what) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cd(j[0].get<double>(), j[1].get<double>());
  throw ConfigError(std::string(what) + ": expected number or [re, im]");
}

MatC parse_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw ConfigError(std::string(what) + ": expected a matrix literal");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  MatC m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw ConfigError(std::string(what) + ": ragged matrix literal");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c], what);
  }
  return m;
}

// ------------------------------------------------------------- experiments

Table run_spectrum(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  const OperatorMatrix omega = build_omega_f(spec);
  const TimeObservable obs =
      build_time_observable(omega, Side::physical, Direction::forward);
  Table t;
  t.columns = {"index", "lambda", "t_coord"};
  for (int j = 0; j < obs.dim(); ++j)
    t.rows.push_back({num(j), num(obs.eigvals(j)), num(obs.time_coordinate(j))});
  const RangeDiagnostics diag = range_diagnostics(omega);
  inv.push_back(check_ge("lambda_min", obs.eigvals(obs.dim() - 1), -1e-8));
  inv.push_back(check_le("lambda_max", obs.eigvals(0), 1.0 + 1e-8));
  inv.push_back(report("numerical_rank", diag.rank));
  inv.push_back(report("sigma_min", diag.sigma_min));
  return t;
}

Table run_flow(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  const json& p = config.at("params");
  const bool fwd = p.at("direction") == "forward";
  const OperatorMatrix omega = fwd ? build_omega_f(spec) : build_omega_b(spec);
  const TimeObservable obs = build_time_observable(
      omega, Side::physical, fwd ? Direction::forward : Direction::backward);
  const HalfLineFunction state = half_gaussian(spec, num_at(p.at("state"), "center"),
                                               num_at(p.at("state"), "width"));
  const double a = num_at(p, "a");
  const double tmax = num_at(p, "tmax");
  const int steps = int_at(p, "steps");
  const double threshold = num_at(p, "threshold");
  std::vector<double> times;
  for (int k = 0; k <= steps; ++k)
    times.push_back((fwd ? 1.0 : -1.0) * tmax * k / steps);
  const FlowResult flow =
      spectral_flow_experiment(obs, state, a, times, threshold * threshold);

  Table t;
  t.columns = {"t", "mass_low", "mass_high"};
  double pyth = 0.0;
  for (const FlowRow& row : flow.curve) {
    t.rows.push_back(
        {num(row.t), num(std::sqrt(row.mass_low)), num(std::sqrt(row.mass_high))});
    pyth = std::max(pyth, std::abs(row.mass_low + row.mass_high - 1.0));
  }
  inv.push_back(check_le("mass_pythagoras_dev", pyth, 1e-10));
  inv.push_back(Invariant{"crossed_threshold", flow.first_crossing, threshold,
                          "exists", flow.crossed});
  inv.push_back(check_le("rise_above_start",
                         flow.max_mass_low - flow.curve.front().mass_low, 1e-10));
  return t;
}

Table run_normflow(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  const json& p = config.at("params");
  const HalfLineFunction psi = half_gaussian(spec, num_at(p.at("state"), "center"),
                                             num_at(p.at("state"), "width"));
  std::vector<double> times;
  for (const auto& v : p.at("times")) times.push_back(v.get<double>());
  const auto rows = norm_flow_curves(psi, times);
  Table t;
  t.columns = {"t", "n_plus", "n_minus", "n_plus_toeplitz"};
  double pyth = 0.0, toep = 0.0;
  for (const NormFlowRow& r : rows) {
    t.rows.push_back(
        {num(r.t), num(r.n_plus), num(r.n_minus), num(r.n_plus_toeplitz)});
    pyth = std::max(pyth, std::abs(r.n_plus + r.n_minus - 1.0));
    toep = std::max(toep, std::abs(r.n_plus - r.n_plus_toeplitz));
  }
  inv.push_back(check_le("norm_pythagoras_dev", pyth, 1e-12));
  inv.push_back(report("toeplitz_route_max_dev", toep));
  return t;
}

Table run_xmu(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  std::vector<cd> mus;
  for (const auto& m : config.at("params").at("mu"))
    mus.push_back(parse_complex(m, "mu"));
  const auto rows = xmu_program(spec, mus);
  Table t;
  t.columns = {"mu_re", "mu_im", "norm_x_sq", "norm_psi_sq", "ratio"};
  // The FFT route and the lattice quadrature may differ by discretization
  // wings of fixed absolute size, so compare them relative to the full mass.
  double dev = 0.0;
  for (const XmuRow& r : rows) {
    t.rows.push_back({num(r.mu.real()), num(r.mu.imag()), num(r.norm_x_sq),
                      num(r.norm_psi_sq), num(r.ratio)});
    dev = std::max(dev, std::abs(r.norm_psi_sq - r.oracle_psi_sq) / r.norm_x_sq);
  }
  inv.push_back(check_le("psi_quadrature_max_dev", dev, 2e-2));
  return t;
}

Table run_intertwine(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  const json& p = config.at("params");
  const bool fwd = p.at("direction") == "forward";
  const HalfLineFunction state = half_gaussian(spec, num_at(p.at("state"), "center"),
                                               num_at(p.at("state"), "width"));
  Table t;
  t.columns = {"t", "res_correct", "res_wrong", "ratio"};
  double worst_res = 0.0, least_ratio = kInfiniteTime;
  for (const auto& kj : p.at("k_list")) {
    const int k = kj.get<int>();
    const double tval = (fwd ? 1.0 : -1.0) * k * spec.dtau();
    const IntertwineResult r = intertwining_residual(
        state, tval, fwd ? Direction::forward : Direction::backward);
    const double ratio = r.res_wrong / std::max(r.res_correct, 1e-300);
    t.rows.push_back({num(tval), num(r.res_correct), num(r.res_wrong), num(ratio)});
    worst_res = std::max(worst_res, r.res_correct);
    least_ratio = std::min(least_ratio, ratio);
  }
  inv.push_back(check_le("max_res_correct", worst_res, 1e-6));
  inv.push_back(check_ge("min_asymmetry_ratio", least_ratio, 1e3));
  return t;
}

Table run_characteristic(const json& config, std::vector<Invariant>& inv) {
  const GridSpec spec = grid_of(config);
  const json& p = config.at("params");
  const double rank_tol = num_at(p, "rank_tol");
  const OperatorMatrix omega = build_omega_f(spec);
  MatC c = adjoint(omega).m * omega.m;
  c = 0.5 * (c + c.adjoint().eval());
  Table t;
  t.columns = {"lambda_re", "lambda_im", "res_map",      "res_adjoint",
               "inclusion", "theta_norm", "defect_identity"};
  double worst_norm = 0.0, worst_res = 0.0;
  for (const auto& lj : p.at("lambda")) {
    const cd lam = parse_complex(lj, "lambda");
    const CharIntertwineResult r = char_intertwine_residual(omega, lam, rank_tol);
    const double tn = op_norm(characteristic_function(c, lam, rank_tol));
    const double di = characteristic_defect_residual(c, lam, rank_tol);
    t.rows.push_back({num(lam.real()), num(lam.imag()), num(r.res_map),
                      num(r.res_adjoint), num(r.inclusion), num(tn), num(di)});
    worst_norm = std::max(worst_norm, tn);
    worst_res = std::max({worst_res, r.res_map, r.res_adjoint});
  }
  inv.push_back(check_le("max_theta_norm", worst_norm, 1.0 + 1e-8));
  inv.push_back(check_le("max_transport_residual", worst_res, 1e-7));
  return t;
}

Table run_fock_check(const json& config, std::vector<Invariant>& inv) {
  const json& p = config.at("params");
  const int d = int_at(p, "d");
  const int n_max = int_at(p, "n_max");
  const FockSpec f = make_fock(d, n_max);
  DeterministicGaussian gen(config.at("seed").get<unsigned long long>());
  const VecC u = gen.complex_vector(d);
  const VecC v = gen.complex_vector(d);
  MatC c = gen.complex_matrix(d, d);
  c /= op_norm(c) * 1.25;

  const VecC eu = exp_vector(f, u);
  const VecC ev = exp_vector(f, v);
  cd series = 0.0;
  cd pow = 1.0;
  double fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      pow *= u.dot(v);
      fact *= n;
    }
    series += pow / fact;
  }
  const double gram_err = std::abs(eu.dot(ev) - series);

  const MatC low = level_projector(f, n_max - 1);
  const MatC comm = annihilation(f, u) * creation(f, v) - creation(f, v) * annihilation(f, u);
  const double ccr_err =
      (low * (comm - u.dot(v) * MatC::Identity(f.dim(), f.dim())) * low).norm();

  const MatC g = second_quantization(f, c);
  const double gamma_exp_err = (g * eu - exp_vector(f, VecC(c * u))).norm();

  MatC c2 = gen.complex_matrix(d, d);
  c2 /= op_norm(c2) * 1.1;
  const double functorial_err =
      (second_quantization(f, MatC(c * c2)) - g * second_quantization(f, c2)).norm();

  const double creation_err =
      (g * creation(f, u) * ev - creation(f, VecC(c * u)) * g * ev).norm();

  const VecC lhs = g * annihilation(f, u) * ev - annihilation(f, VecC(c * u)) * g * ev;
  const VecC pred = (u.dot(v) - VecC(c * u).dot(VecC(c * v))) * exp_vector(f, VecC(c * v));
  const double annih_err = (low * (lhs - pred)).norm();

  Table t;
  t.columns = {"check", "value"};
  const std::vector<std::pair<std::string, double>> checks = {
      {"exp_gram_series", gram_err},
      {"ccr_below_top", ccr_err},
      {"gamma_exp_vector", gamma_exp_err},
      {"gamma_functorial", functorial_err},
      {"creation_intertwine", creation_err},
      {"annihilation_discrepancy_below_top", annih_err},
  };
  for (const auto& [name, value] : checks) {
    t.rows.push_back({txt(name), num(value)});
    inv.push_back(check_le(name, value, 1e-12));
  }
  return t;
}

struct QsdeSetup {
  Martingale clock;
  OperatorMatrix omega;
};

QsdeSetup qsde_clock(const json& p, unsigned long long seed) {
  const json& base = p.at("base");
  const int dim = int_at(base, "dim");
  VecR lams(dim);
  if (base.at("kind") == "toy3") {
    if (dim != 3) throw ConfigError("qsde: toy3 base requires dim 3");
    lams << 0.9, 0.5, 0.2;
  } else {  // dense
    for (int j = 0; j < dim; ++j) {
      const double tj = 0.05 + 4.9 * (j + 0.5) / dim;
      lams(j) = 1.0 / (1.0 + tj);
    }
  }
  OperatorMatrix omega = toy_clock_map(lams, static_cast<unsigned>(seed));
  const TimeObservable obs =
      build_time_observable(omega, Side::physical, Direction::forward);
  DeterministicGaussian gen(seed + 1);
  VecC v = gen.complex_vector(dim);
  v /= v.norm();
  return QsdeSetup{make_martingale(obs, v), std::move(omega)};
}

struct QsdeOps {
  MatC l, s, h;
};

QsdeOps qsde_ops(const json& p, bool solvable) {
  QsdeOps ops;
  if (p.contains("H"))
    ops.h = parse_matrix(p.at("H"), "H");
  else {
    ops.h = MatC(2, 2);
    ops.h << cd(0.3), cd(0.1), cd(0.1), cd(-0.2);
  }
  const int d = static_cast<int>(ops.h.rows());
  if (solvable) {
    ops.l = MatC::Zero(d, d);
    ops.s = MatC::Identity(d, d);
    return ops;
  }
  if (p.contains("L"))
    ops.l = parse_matrix(p.at("L"), "L");
  else {
    ops.l = MatC(2, 2);
    ops.l << cd(0.2), cd(0.05), cd(-0.1), cd(0.15);
  }
  if (p.contains("S"))
    ops.s = parse_matrix(p.at("S"), "S");
  else {
    const double th = 0.4;
    ops.s = MatC(2, 2);
    ops.s << cd(std::cos(th)), cd(-std::sin(th)), cd(std::sin(th)), cd(std::cos(th));
  }
  return ops;
}

std::vector<double> linspace_grid(double tmax, int steps) {
  std::vector<double> t;
  for (int k = 0; k <= steps; ++k) t.push_back(tmax * k / steps);
  return t;
}

// Closed form for the vanishing-noise family: exp(-i H c(t)) (x) 1.
MatC solvable_exact(const MatC& h, double clock_total, int fock_dim) {
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  const int d = static_cast<int>(h.rows());
  MatC phase = MatC::Zero(d, d);
  for (int j = 0; j < d; ++j)
    phase(j, j) = std::exp(cd(0.0, -es.eigenvalues()(j) * clock_total));
  const MatC sys = es.eigenvectors() * phase * es.eigenvectors().adjoint();
  MatC out = MatC::Zero(d * fock_dim, d * fock_dim);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.block(i * fock_dim, j * fock_dim, fock_dim, fock_dim) =
          sys(i, j) * MatC::Identity(fock_dim, fock_dim);
  return out;
}

Table run_qsde(const json& config, std::vector<Invariant>& inv) {
  const json& p = config.at("params");
  const std::string mode = p.at("mode");
  const unsigned long long seed = config.at("seed").get<unsigned long long>();
  const double tmax = num_at(p, "tmax");
  const int n_max = int_at(p, "n_max");
  const QsdeSetup setup = qsde_clock(p, seed);
  const QsdeOps ops = qsde_ops(p, mode != "generic");

  Table t;
  if (mode == "halving") {
    t.columns = {"steps", "dt", "max_drift", "factor"};
    double prev = 0.0;
    bool first = true;
    for (const auto& sj : p.at("steps_list")) {
      const int steps = sj.get<int>();
      const ProcessSpec spec =
          make_process_spec(ops.l, ops.s, ops.h, setup.clock, n_max,
                            linspace_grid(tmax, steps));
      const PathResult path = integrate(spec, Side::physical);
      const double factor = first ? 0.0 : prev / path.unitarity_drift;
      t.rows.push_back({num(steps), num(tmax / steps), num(path.unitarity_drift),
                        num(factor)});
      if (!first)
        inv.push_back(Invariant{"halving_factor_steps_" + std::to_string(steps),
                                factor, 1.5, "in [1.5,3]",
                                factor >= 1.5 && factor <= 3.0});
      prev = path.unitarity_drift;
      first = false;
    }
    return t;
  }

  const int steps = int_at(p, "steps");
  const ProcessSpec spec = make_process_spec(ops.l, ops.s, ops.h, setup.clock,
                                             n_max, linspace_grid(tmax, steps));
  const PathResult path = integrate(spec, Side::physical);

  if (mode == "solvable") {
    const MatC exact =
        solvable_exact(ops.h, path.clock_curve.back(), spec.fock.dim());
    const double err = op_norm(path.unitaries.back() - exact);
    t.columns = {"t", "drift", "clock"};
    for (size_t k = 0; k < path.times.size(); ++k)
      t.rows.push_back(
          {num(path.times[k]), num(path.drift_curve[k]), num(path.clock_curve[k])});
    inv.push_back(check_le("closed_form_err", err, 10.0 * tmax / steps));
    inv.push_back(report("max_drift", path.unitarity_drift));
    return t;
  }

  // generic: integrate both sides and report the intertwining diagnostics
  const ProcessSpec hat_spec = rewrite_hat(spec, setup.omega);
  const PathResult hat_path = integrate(hat_spec, Side::hardy);
  DeterministicGaussian gen(seed + 2);
  const int sys_dim = spec.system_dim();
  const int base_dim = setup.clock.obs.dim();
  std::vector<Probe> probes;
  for (int i = 0; i < 2; ++i) {
    Probe probe;
    probe.h = gen.complex_vector(sys_dim);
    probe.h /= probe.h.norm();
    probe.hp = gen.complex_vector(sys_dim);
    probe.hp /= probe.hp.norm();
    probe.u = gen.complex_vector(base_dim);
    probe.u *= 0.7 / probe.u.norm();
    probe.up = gen.complex_vector(base_dim);
    probe.up *= 0.7 / probe.up.norm();
    probes.push_back(std::move(probe));
  }
  const DiagnosticsReport rep = intertwining_diagnostics(spec, hat_spec, path,
                                                         hat_path, setup.omega, probes);
  t.columns = {"t",           "drift_phys",  "drift_hat", "bracket_phys",
               "bracket_hat", "probe0_diff", "probe1_diff"};
  for (size_t k = 0; k < path.times.size(); ++k)
    t.rows.push_back({num(path.times[k]), num(path.drift_curve[k]),
                      num(hat_path.drift_curve[k]), num(rep.bracket_phys[k]),
                      num(rep.bracket_hat[k]),
                      num(std::abs(rep.probes[0].m_phys[k] - rep.probes[0].m_hat[k])),
                      num(std::abs(rep.probes[1].m_phys[k] - rep.probes[1].m_hat[k]))});
  inv.push_back(check_le("bracket_clock_residual", rep.bracket_residual, 1e-10));
  inv.push_back(check_le("gram_t0_residual", rep.gram0_residual, 1e-12));
  inv.push_back(report("max_drift_phys", path.unitarity_drift));
  inv.push_back(report("max_drift_hat", hat_path.unitarity_drift));
  return t;
}

// ------------------------------------------------------------- validation

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "spectrum", "flow",           "normflow",   "xmu",
      "intertwine", "characteristic", "fock-check", "qsde"};
  return names;
}

bool needs_grid(const std::string& e) {
  return e != "fock-check" && e != "qsde";
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

void require_number(const json& j, const char* key, const std::string& ctx) {
  require(j.contains(key) && j.at(key).is_number(), ctx + ": missing number '" + key + "'");
}

void validate_state(const json& p, const std::string& ctx) {
  require(p.contains("state") && p.at("state").is_object(), ctx + ": missing 'state'");
  require_number(p.at("state"), "center", ctx + ".state");
  require_number(p.at("state"), "width", ctx + ".state");
  require(p.at("state").at("width").get<double>() > 0.0, ctx + ": state.width must be > 0");
}

void validate_direction(const json& p, const std::string& ctx) {
  require(p.contains("direction") && p.at("direction").is_string(),
          ctx + ": missing 'direction'");
  const std::string d = p.at("direction");
  require(d == "forward" || d == "backward", ctx + ": direction must be forward|backward");
}

json default_params(const std::string& e) {
  if (e == "spectrum") return json::object();
  if (e == "flow")
    return json{{"a", 2.0},
                {"tmax", 50.0},
                {"steps", 10},
                {"threshold", 0.3},
                {"direction", "forward"},
                {"state", {{"center", 20.0}, {"width", 4.0}}}};
  if (e == "normflow")
    return json{{"times", {0.0, 0.7853981633974483, 1.5707963267948966,
                           2.356194490192345, 3.141592653589793}},
                {"state", {{"center", 25.0}, {"width", 3.5}}}};
  if (e == "xmu") return json{{"mu", {json::array({0.0, -1.0})}}};
  if (e == "intertwine")
    return json{{"k_list", {1, 8, 160, 795}},
                {"direction", "forward"},
                {"state", {{"center", 50.0}, {"width", 5.0}}}};
  if (e == "characteristic")
    return json{{"rank_tol", 1e-4},
                {"lambda", {json::array({0.0, 0.0}), json::array({0.3, 0.2}),
                            json::array({0.0, -0.5}), json::array({-0.6, 0.3}),
                            json::array({0.9, 0.0})}}};
  if (e == "fock-check") return json{{"d", 4}, {"n_max", 4}};
  // qsde
  return json{{"mode", "solvable"},
              {"tmax", 5.0},
              {"steps", 200},
              {"steps_list", {4, 8, 16}},
              {"n_max", 3},
              {"base", {{"kind", "toy3"}, {"dim", 3}}}};
}

json default_grid(const std::string& e) {
  if (e == "xmu") return json{{"n_points", 4096}, {"halfwidth", 200.0}};
  if (e == "intertwine") return json{{"n_points", 2048}, {"halfwidth", 100.0}};
  if (e == "characteristic") return json{{"n_points", 256}, {"halfwidth", 50.0}};
  if (e == "spectrum") return json{{"n_points", 512}, {"halfwidth", 50.0}};
  return json{{"n_points", 1024}, {"halfwidth", 100.0}};
}

}  // namespace

json validate_config(const json& config) {
  require(config.is_object(), "config: expected a JSON object");
  require(config.contains("experiment") && config.at("experiment").is_string(),
          "config: missing string field 'experiment'");
  const std::string e = config.at("experiment");
  const auto& names = experiment_names();
  require(std::find(names.begin(), names.end(), e) != names.end(),
          "config: unknown experiment '" + e + "'");

  json norm;
  norm["experiment"] = e;
  norm["seed"] = config.value("seed", 1);
  require(norm["seed"].is_number_integer() && norm["seed"].get<long long>() >= 0,
          "config: seed must be a nonnegative integer");

  json out = config.value("output", json::object());
  require(out.is_object(), "config: 'output' must be an object");
  norm["output"] = json{{"path", out.value("path", e + ".csv")},
                        {"format", out.value("format", "csv")}};
  const std::string fmt = norm["output"]["format"];
  require(fmt == "csv" || fmt == "json", "config: format must be csv|json");
  require(!norm["output"]["path"].get<std::string>().empty(),
          "config: output.path must be nonempty");

  if (needs_grid(e)) {
    json g = default_grid(e);
    if (config.contains("grid")) {
      require(config.at("grid").is_object(), "config: 'grid' must be an object");
      g.update(config.at("grid"));
    }
    require(g.contains("n_points") && g.at("n_points").is_number_integer(),
            "grid: n_points must be an integer");
    require(g.contains("halfwidth") && g.at("halfwidth").is_number(),
            "grid: halfwidth must be a number");
    const int n = g.at("n_points").get<int>();
    require(n >= 8 && n % 2 == 0, "grid: n_points must be even and >= 8");
    require(g.at("halfwidth").get<double>() > 0.0, "grid: halfwidth must be > 0");
    norm["grid"] = g;
  }

  json p = default_params(e);
  if (config.contains("params")) {
    require(config.at("params").is_object(), "config: 'params' must be an object");
    p.update(config.at("params"));
  }
  if (e == "qsde" && p.value("mode", "") == "halving") {
    // Self-convergence needs a clock with many atoms per time bin; supply a
    // dense base and a single-particle truncation unless overridden.
    const json up = config.value("params", json::object());
    if (!up.contains("base")) p["base"] = json{{"kind", "dense"}, {"dim", 128}};
    if (!up.contains("n_max")) p["n_max"] = 1;
  }

  if (e == "flow") {
    require_number(p, "a", "flow");
    require(p.at("a").get<double>() > 1.0, "flow: a must be > 1");
    require_number(p, "tmax", "flow");
    require(p.at("tmax").get<double>() > 0.0, "flow: tmax must be > 0");
    require(p.contains("steps") && p.at("steps").is_number_integer() &&
                p.at("steps").get<int>() >= 1,
            "flow: steps must be a positive integer");
    require_number(p, "threshold", "flow");
    validate_direction(p, "flow");
    validate_state(p, "flow");
  } else if (e == "normflow") {
    require(p.contains("times") && p.at("times").is_array() && !p.at("times").empty(),
            "normflow: 'times' must be a nonempty array");
    for (const auto& tv : p.at("times"))
      require(tv.is_number() && tv.get<double>() >= 0.0,
              "normflow: times must be numbers >= 0");
    validate_state(p, "normflow");
  } else if (e == "xmu") {
    require(p.contains("mu") && p.at("mu").is_array() && !p.at("mu").empty(),
            "xmu: 'mu' must be a nonempty array");
    for (const auto& m : p.at("mu")) {
      const cd mu = parse_complex(m, "xmu.mu");
      require(mu.imag() < 0.0, "xmu: mu must lie in the lower half plane");
    }
  } else if (e == "intertwine") {
    require(p.contains("k_list") && p.at("k_list").is_array() && !p.at("k_list").empty(),
            "intertwine: 'k_list' must be a nonempty array");
    for (const auto& kv : p.at("k_list"))
      require(kv.is_number_integer() && kv.get<int>() >= 1,
              "intertwine: k_list entries must be integers >= 1");
    validate_direction(p, "intertwine");
    validate_state(p, "intertwine");
  } else if (e == "characteristic") {
    require_number(p, "rank_tol", "characteristic");
    require(p.at("rank_tol").get<double>() > 0.0, "characteristic: rank_tol must be > 0");
    require(p.contains("lambda") && p.at("lambda").is_array() && !p.at("lambda").empty(),
            "characteristic: 'lambda' must be a nonempty array");
    for (const auto& l : p.at("lambda")) {
      const cd lam = parse_complex(l, "characteristic.lambda");
      require(std::abs(lam) <= 0.95, "characteristic: |lambda| must be <= 0.95");
    }
  } else if (e == "fock-check") {
    require(p.contains("d") && p.at("d").is_number_integer() && p.at("d").get<int>() >= 1,
            "fock-check: d must be a positive integer");
    require(p.contains("n_max") && p.at("n_max").is_number_integer() &&
                p.at("n_max").get<int>() >= 1,
            "fock-check: n_max must be a positive integer");
  } else if (e == "qsde") {
    require(p.contains("mode") && p.at("mode").is_string(), "qsde: missing 'mode'");
    const std::string mode = p.at("mode");
    require(mode == "solvable" || mode == "generic" || mode == "halving",
            "qsde: mode must be solvable|generic|halving");
    require_number(p, "tmax", "qsde");
    require(p.at("tmax").get<double>() > 0.0, "qsde: tmax must be > 0");
    require(p.contains("n_max") && p.at("n_max").is_number_integer() &&
                p.at("n_max").get<int>() >= 0,
            "qsde: n_max must be a nonnegative integer");
    require(p.contains("base") && p.at("base").is_object(), "qsde: missing 'base'");
    const json& b = p.at("base");
    require(b.contains("kind") && b.at("kind").is_string() &&
                (b.at("kind") == "toy3" || b.at("kind") == "dense"),
            "qsde: base.kind must be toy3|dense");
    require(b.contains("dim") && b.at("dim").is_number_integer() &&
                b.at("dim").get<int>() >= 1,
            "qsde: base.dim must be a positive integer");
    if (mode == "halving") {
      require(p.contains("steps_list") && p.at("steps_list").is_array() &&
                  p.at("steps_list").size() >= 2,
              "qsde: halving needs steps_list with >= 2 entries");
      int prev = 0;
      for (const auto& sv : p.at("steps_list")) {
        require(sv.is_number_integer() && sv.get<int>() >= 1,
                "qsde: steps_list entries must be positive integers");
        require(sv.get<int>() > prev, "qsde: steps_list must increase");
        prev = sv.get<int>();
      }
    } else {
      require(p.contains("steps") && p.at("steps").is_number_integer() &&
                  p.at("steps").get<int>() >= 1,
              "qsde: steps must be a positive integer");
    }
  }
  norm["params"] = p;
  return norm;
}

int run_config(const json& config) {
  const json norm = validate_config(config);
  const std::string e = norm.at("experiment");
  std::vector<Invariant> invariants;
  Table table;
  if (e == "spectrum")
    table = run_spectrum(norm, invariants);
  else if (e == "flow")
    table = run_flow(norm, invariants);
  else if (e == "normflow")
    table = run_normflow(norm, invariants);
  else if (e == "xmu")
    table = run_xmu(norm, invariants);
  else if (e == "intertwine")
    table = run_intertwine(norm, invariants);
  else if (e == "characteristic")
    table = run_characteristic(norm, invariants);
  else if (e == "fock-check")
    table = run_fock_check(norm, invariants);
  else
    table = run_qsde(norm, invariants);

  const std::string path = norm.at("output").at("path");
  const std::string fmt = norm.at("output").at("format");
  if (fmt == "csv")
    write_file(path, table_csv(table));
  else
    write_file(path, table_json(table).dump(2) + "\n");
  const json manifest = manifest_json(norm, invariants);
  write_file(path + ".manifest.json", manifest.dump(2) + "\n");

  return manifest.at("all_pass").get<bool>() ? 0 : 3;
}

namespace {

struct FlagOverrides {
  std::string config_path, out_path, format;
  int n = -1;
  double halfwidth = -1.0, a = -1.0, tmax = -1.0;
  int steps = -1;
};

json assemble_config(const std::string& experiment, const FlagOverrides& f) {
  json config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot read config file: " + f.config_path);
    try {
      in >> config;
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("config parse error: ") + ex.what());
    }
    require(config.is_object(), "config: expected a JSON object");
    if (config.contains("experiment"))
      require(config.at("experiment") == experiment,
              "config: file experiment does not match the subcommand");
  }
  config["experiment"] = experiment;
  if (!f.out_path.empty()) config["output"]["path"] = f.out_path;
  if (!f.format.empty()) config["output"]["format"] = f.format;
  if (f.n > 0) config["grid"]["n_points"] = f.n;
  if (f.halfwidth > 0) config["grid"]["halfwidth"] = f.halfwidth;
  if (f.a > 0) config["params"]["a"] = f.a;
  if (f.tmax > 0) config["params"]["tmax"] = f.tmax;
  if (f.steps > 0) config["params"]["steps"] = f.steps;
  return config;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"finite-grid experiments for forward/backward time observables"};
  app.require_subcommand(1);
  FlagOverrides flags;
  for (const std::string& name : experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", flags.config_path, "JSON config file");
    sub->add_option("--out", flags.out_path, "output file path");
    sub->add_option("--format", flags.format, "csv|json");
    sub->add_option("--n", flags.n, "grid points");
    sub->add_option("--halfwidth", flags.halfwidth, "grid halfwidth");
    sub->add_option("--a", flags.a, "spectral window split point");
    sub->add_option("--tmax", flags.tmax, "time horizon");
    sub->add_option("--steps", flags.steps, "number of time steps");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"detail", e.what()}}.dump()
              << "\n";
    return 2;
  }

  try {
    const std::string experiment = app.get_subcommands().front()->get_name();
    return run_config(assemble_config(experiment, flags));
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"detail", e.what()}}.dump()
              << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"detail", e.what()}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "invariant"}, {"detail", e.what()}}.dump()
              << "\n";
    return 3;
  }
}

}  // namespace tobs
