// camel_lab: batch runner for the string-equation and camel-geometry experiments.
//
//   camel_lab <subcommand> [--config run.toml] [flags]
//
// Each run writes into <out>/<UTC timestamp>-<config hash>/. Files carry a
// provenance header built from the effective configuration only, so identical
// configurations produce byte-identical files.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "camel_lab/capacity.hpp"
#include "camel_lab/cylinder.hpp"
#include "camel_lab/displacement.hpp"
#include "camel_lab/enclosing_ball.hpp"
#include "camel_lab/errors.hpp"
#include "camel_lab/galerkin.hpp"
#include "camel_lab/hamiltonian_algebra.hpp"
#include "camel_lab/integrators.hpp"
#include "camel_lab/linear_ops.hpp"
#include "camel_lab/modes.hpp"
#include "camel_lab/systems.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace camel;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Run {
  std::string command;
  std::map<std::string, std::string> params;
  std::string hash;
  fs::path dir;

  std::string csv_header() const {
    std::string out = "# tool=camel_lab\n# version=" + std::string(kVersion) + "\n# command=" + command +
                      "\n# config_hash=" + hash + "\n";
    for (const auto& [k, v] : params) out += "# " + k + "=" + v + "\n";
    return out;
  }

  json provenance() const {
    json p;
    p["tool"] = "camel_lab";
    p["version"] = kVersion;
    p["command"] = command;
    p["config_hash"] = hash;
    p["params"] = json(params);
    return p;
  }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << content;
  }

  void write_json(const std::string& name, json results, bool passed) const {
    json doc;
    doc["provenance"] = provenance();
    doc["passed"] = passed;
    doc["results"] = std::move(results);
    write(name, doc.dump(2) + "\n");
  }
};

// Effective configuration of a parsed subcommand: explicit values, else defaults.
std::map<std::string, std::string> effective_params(const CLI::App& sub) {
  std::map<std::string, std::string> params;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "out") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (opt->get_type_size() == 0 && value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (value.size() >= 2 && (value.front() == '[' || value.front() == '{')) value = value.substr(1, value.size() - 2);
    }
    params[name] = value;
  }
  return params;
}

fs::path make_run_dir(const fs::path& base, const std::string& hash) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  fs::path dir = base / (std::string(stamp) + "-" + hash);
  for (int i = 1; fs::exists(dir); ++i) dir = base / (std::string(stamp) + "-" + hash + "-" + std::to_string(i));
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + p.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json vec_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

// ---------------------------------------------------------------- simulate

struct SimulateParams {
  std::string spec = "sine-gordon";
  std::string scheme = "strang";
  int n = 16;
  std::size_t m = 0;
  double dt = 1e-2;
  double t = 1.0;
  double t0 = 0.0;
  std::uint64_t seed = 1;
  double R = 1.0;
  double decay = 1.0;
  std::string init;
  int record_every = 10;
  double picard_tol = 1e-10;
};

int run_simulate(const Run& run, const SimulateParams& p) {
  const auto spec = NonlinearitySpec::by_name(p.spec);
  FlowConfig cfg;
  cfg.dt = p.dt;
  cfg.scheme = scheme_from_string(p.scheme);
  cfg.n = p.n;
  cfg.m = p.m;
  cfg.t0 = p.t0;
  cfg.t1 = p.t;
  cfg.record_every = p.record_every;
  cfg.picard_tol = p.picard_tol;
  cfg.validate();

  PhaseVector u0;
  if (!p.init.empty()) {
    u0 = phase_vector_from_csv(read_file(p.init));
    if (u0.order() > p.n) throw ValidationError("simulate: initial state order exceeds --n");
    u0 = u0.padded(p.n);
  } else {
    std::mt19937_64 rng(p.seed);
    u0 = sample_ball(rng, p.n, p.R, p.decay);
  }

  const auto traj = flow(u0, cfg, spec);
  std::string csv = run.csv_header() + "# grid=" + std::to_string(cfg.grid()) + "\nt,j,a_j,b_j\n";
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const auto& u = traj.states[s];
    for (int j = -u.order(); j <= u.order(); ++j) {
      csv += num(traj.times[s]) + "," + std::to_string(j) + "," + num(u.a(ModeIndex{j})) + "," +
             num(u.b(ModeIndex{j})) + "\n";
    }
  }
  run.write("trajectory.csv", csv);

  const auto& final_state = traj.states.back();
  const double linear_distance = e_norm(final_state - apply_exp_tJA(u0, p.t - p.t0));
  json r;
  r["recorded_states"] = traj.states.size();
  r["final_time"] = traj.times.back();
  r["initial_norm"] = e_norm(u0);
  r["final_norm"] = e_norm(final_state);
  r["initial_energy"] = discrete_energy(u0, spec, p.n, cfg.grid());
  r["final_energy"] = discrete_energy(final_state, spec, p.n, cfg.grid());
  r["linear_flow_distance"] = linear_distance;
  run.write_json("summary.json", r, true);
  std::cout << "final_norm " << num(e_norm(final_state)) << "\nlinear_flow_distance " << num(linear_distance)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- converge

struct ConvergeParams {
  std::string spec = "sine-gordon";
  double R = 1.0;
  double T = 1.0;
  std::vector<int> n_values{4, 8, 16, 32, 64};
  int samples = 200;
  std::uint64_t seed = 1;
  int N_probe = 128;
  std::size_t m = 0;
  double decay = 1.0;
  bool skip_approx = false;
  double approx_t = 1.0;
  int N_ref = 128;
  std::vector<int> approx_n{8, 16, 32};
  int approx_samples = 20;
  double dt = 1e-2;
  std::string scheme = "strang";
};

// Sampled maxima may wobble; an increase beyond 10% counts as a violation.
bool decreasing_with_margin(const std::vector<double>& y) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] > 1.1 * y[i - 1]) return false;
  }
  return true;
}

int run_converge(const Run& run, const ConvergeParams& p) {
  const auto spec = NonlinearitySpec::by_name(p.spec);
  if (!(p.R > 0.0) || !(p.T >= 0.0)) throw ValidationError("converge: need R > 0 and T >= 0");
  for (std::size_t i = 1; i < p.n_values.size(); ++i) {
    if (p.n_values[i] <= p.n_values[i - 1]) throw ValidationError("converge: --n-values must increase");
  }
  if (p.n_values.empty() || p.n_values.back() >= p.N_probe) {
    throw ValidationError("converge: --N-probe must exceed every n");
  }
  const auto report = epsilon_curve(spec, p.R, p.T, p.n_values, p.samples, p.seed, p.N_probe, p.m, p.decay);
  run.write("epsilon.csv", run.csv_header() + to_csv(report));

  json r;
  r["n_values"] = report.n_values;
  r["raw_errors"] = report.errors;
  r["isotonic_errors"] = report.isotonic_errors;
  const bool eps_ok = decreasing_with_margin(report.errors);
  r["epsilon_decreasing"] = eps_ok;
  bool passed = eps_ok;

  if (!p.skip_approx) {
    for (int n : p.approx_n) {
      if (n >= p.N_ref) throw ValidationError("converge: --N-ref must exceed every --approx-n");
    }
    FlowConfig cfg;
    cfg.dt = p.dt;
    cfg.scheme = scheme_from_string(p.scheme);
    std::vector<double> approx, eps;
    const auto eps_curve =
        epsilon_curve(spec, p.R, p.approx_t, p.approx_n, p.samples, p.seed, p.N_ref, 0, p.decay);
    for (int n : p.approx_n) {
      approx.push_back(approx_error(spec, p.approx_t, n, p.N_ref, p.R, p.approx_samples, p.seed, cfg, p.decay));
    }
    eps = eps_curve.errors;
    std::string csv = run.csv_header() + "n,approx_error,epsilon\n";
    for (std::size_t i = 0; i < approx.size(); ++i) {
      csv += std::to_string(p.approx_n[i]) + "," + num(approx[i]) + "," + num(eps[i]) + "\n";
    }
    run.write("approx.csv", csv);
    const bool approx_ok = decreasing_with_margin(approx);
    r["approx_n"] = p.approx_n;
    r["approx_errors"] = approx;
    r["approx_epsilon"] = eps;
    r["approx_decreasing"] = approx_ok;
    r["gronwall_constant"] = gronwall_constant(approx, eps);
    passed = passed && approx_ok;
  }
  run.write_json("summary.json", r, passed);
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    std::cout << report.n_values[i] << " " << num(report.errors[i]) << "\n";
  }
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------- camel

struct CamelParams {
  int n = 2;
  int k = 1;
  std::string base = "ball";
  double r = 1.0;
  std::vector<double> radii;
  double A = 0.5;
  double t = 0.2;
  double dt = 1e-3;
  int starts = 64;
  double tol = 1e-8;
  double bound_tol = 0.01;
  double L = 0.0;
  double cutoff_R = 0.0;
  int swap_samples = 200;
  std::uint64_t seed = 1;
};

int run_camel(const Run& run, const CamelParams& p) {
  const auto sys = pendulum_chain(p.n, p.A);
  std::vector<double> radii = p.radii;
  if (radii.empty()) radii.assign(p.base == "ball" ? 1 : static_cast<std::size_t>(p.k), p.r);
  CoisotropicCylinder cyl{p.k, p.n, BaseShape::from_name(p.base, radii), p.L};
  double outer = 0.0;
  for (double x : radii) outer += x * x;
  outer = p.base == "ball" ? radii[0] : std::sqrt(outer);
  if (cyl.L <= 0.0) cyl.L = auto_fiber_box(*sys.certificate, outer, p.t);
  cyl.validate();

  CamelSearchOptions opts;
  opts.starts = p.starts;
  opts.tol = p.tol;
  opts.seed = p.seed;
  const auto set = find_camel_points(time_map(sys, 0.0, p.t, p.dt), cyl, p.t, opts);
  const auto reduced = reduce_points(set, p.k);

  std::string csv = run.csv_header();
  for (int i = 1; i <= p.n; ++i) csv += "q" + std::to_string(i) + ",p" + std::to_string(i) + ",";
  csv += "residual\n";
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    for (Eigen::Index c = 0; c < set.points[i].size(); ++c) csv += num(set.points[i][c]) + ",";
    csv += num(set.residuals[i]) + "\n";
  }
  run.write("camel_points.csv", csv);
  std::string red = run.csv_header();
  for (int i = 1; i <= p.k; ++i) red += std::string(i > 1 ? "," : "") + "q" + std::to_string(i) + ",p" + std::to_string(i);
  red += "\n";
  for (const auto& z : reduced) {
    for (Eigen::Index c = 0; c < z.size(); ++c) red += (c ? "," : "") + num(z[c]);
    red += "\n";
  }
  run.write("reduced.csv", red);

  json r;
  r["fiber_box"] = cyl.L;
  r["starts"] = set.starts;
  r["camel_points"] = set.points.size();
  double max_residual = 0.0;
  for (double x : set.residuals) max_residual = std::max(max_residual, x);
  r["max_residual"] = max_residual;
  bool passed = true;
  if (!reduced.empty()) {
    const auto ball = min_enclosing_ball(reduced);
    r["enclosing_ball"] = {{"center", vec_json(ball.center)}, {"radius", ball.radius}};
  } else {
    r["enclosing_ball"] = nullptr;
  }

  if (cyl.base.kind == BaseShape::Kind::Ball) {
    const auto rep = camel_bound_check(sys, cyl, p.t, set, p.bound_tol, p.dt);
    json b;
    b["r"] = rep.r;
    b["A"] = rep.A;
    b["B"] = rep.B;
    b["bound"] = rep.bound;
    b["time_limit"] = rep.time_limit;
    b["in_regime"] = rep.in_regime;
    b["checked"] = rep.checked;
    b["violations"] = rep.violations;
    b["envelope_violations"] = rep.envelope_violations;
    b["max_norm"] = rep.max_norm;
    b["offending"] = rep.offending ? vec_json(*rep.offending) : json(nullptr);
    r["bound_check"] = b;
    passed = passed && rep.passed();
    std::cout << "bound " << num(rep.bound) << "\nmax_norm " << num(rep.max_norm) << "\nviolations "
              << rep.violations + rep.envelope_violations << "\n";
  } else {
    r["bound_check"] = nullptr;
  }

  if (p.cutoff_R > 0.0) {
    const auto G = cutoff_hamiltonian(sys, p.cutoff_R);
    const auto probe = probe_cutoff(sys, p.cutoff_R, 10000, p.seed);
    double discrepancy = 0.0;
    std::size_t inside = 0;
    const auto steps = static_cast<long>(std::ceil(std::abs(p.t) / p.dt - 1e-9));
    const double h = steps > 0 ? p.t / static_cast<double>(steps) : 0.0;
    for (const auto& z : set.points) {
      Vec w = z, v = z;
      bool contained = z.norm() < p.cutoff_R;
      for (long s = 0; s < steps && contained; ++s) {
        w = midpoint_step_generic(w, static_cast<double>(s) * h, h, sys);
        v = midpoint_step_generic(v, static_cast<double>(s) * h, h, G);
        contained = w.norm() < p.cutoff_R;
      }
      if (!contained) continue;
      ++inside;
      discrepancy = std::max(discrepancy, (w - v).norm());
    }
    r["cutoff"] = {{"R", p.cutoff_R},
                   {"probe_max_excess", probe.max_excess},
                   {"trajectories_inside", inside},
                   {"max_discrepancy", discrepancy}};
    passed = passed && probe.max_excess <= 0.0 && discrepancy <= 1e-10;
  }

  if (p.swap_samples > 0) {
    const auto sw = swap_counterexample(cyl, static_cast<std::size_t>(p.swap_samples), p.seed);
    r["swap"] = {{"samples", sw.samples},
                 {"outside_target", sw.outside_target},
                 {"target_free_complex", sw.target_free_complex},
                 {"target_capacity", sw.target_capacity},
                 {"base_capacity", sw.base_capacity},
                 {"symplectic_defect", sw.symplectic_defect},
                 {"involution_ok", sw.involution_ok}};
    passed = passed && sw.outside_target == 0 && sw.symplectic_defect == 0.0 && sw.involution_ok;
  }
  run.write_json("summary.json", r, passed);
  std::cout << "camel_points " << set.points.size() << "\n";
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------- modes

struct ModesParams {
  std::string spec = "sine-gordon";
  int n = 16;
  std::size_t m = 0;
  double dt = 1e-2;
  double t = 1.0;
  int l = 1;
  std::string base = "disk";
  int k = 1;
  double r = 1.0;
  int starts = 16;
  int sweeps = 6;
  int polish = 200;
  double box = 0.5;
  int directions = 0;
  double min_radius_fraction = 0.9;
  std::uint64_t seed = 1;
};

int run_modes(const Run& run, const ModesParams& p) {
  const auto spec = NonlinearitySpec::by_name(p.spec);
  FlowConfig cfg;
  cfg.n = p.n;
  cfg.m = p.m;
  cfg.dt = p.dt;
  const ModeBase X = p.base == "disk" ? ModeBase::disk(p.l, p.r) : ModeBase::low(p.k, p.r);
  ModeSearchOptions opts;
  opts.starts = p.starts;
  opts.sweeps = p.sweeps;
  opts.polish_iterations = p.polish;
  opts.box = p.box;
  opts.seed = p.seed;

  json r;
  bool passed = true;
  const auto w = maximize_mode(spec, p.l, X, p.t, cfg, opts);
  run.write("witness.csv", run.csv_header() + to_csv(w.initial));
  r["best_amplitude"] = w.value;
  r["evaluations"] = w.evaluations;
  std::cout << "best_amplitude " << num(w.value) << "\n";

  if (p.directions > 0) {
    const auto cloud = mode_witness_cloud(spec, p.l, X, p.t, cfg, p.directions, opts);
    std::string csv = run.csv_header() + "a_l,b_l\n";
    for (const auto& z : cloud.points) csv += num(z[0]) + "," + num(z[1]) + "\n";
    run.write("cloud.csv", csv);
    r["directions"] = p.directions;
    r["enclosing_radius"] = cloud.ball.radius;
    r["enclosing_center"] = vec_json(cloud.ball.center);
    r["radius_threshold"] = p.min_radius_fraction * p.r;
    passed = cloud.ball.radius >= p.min_radius_fraction * p.r;
    std::cout << "enclosing_radius " << num(cloud.ball.radius) << "\n";
  }
  run.write_json("summary.json", r, passed);
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------- capacity

struct CapacityParams {
  std::string shape = "ball";
  double r = 1.0;
  int dim = 2;
  int k = 1;
  std::vector<double> radii;
  bool table = false;
  std::vector<double> lambdas{0.5, 2.0, 3.0};
};

json entry_json(const CapacityOracleEntry& e) {
  return {{"shape", e.shape.name()}, {"c", e.c_value}, {"gamma", e.gamma_value}, {"note", e.note}};
}

int run_capacity(const Run& run, const CapacityParams& p) {
  json r;
  bool passed = true;
  if (p.table) {
    const auto table = capacity_table();
    const auto check = check_capacity_table(table, p.lambdas);
    std::string csv = run.csv_header() + "shape,c,gamma\n";
    json entries = json::array();
    for (const auto& e : table) {
      csv += e.shape.name() + "," + num(e.c_value) + "," + num(e.gamma_value) + "\n";
      entries.push_back(entry_json(e));
    }
    run.write("table.csv", csv);
    r["entries"] = entries;
    r["order_violations"] = check.order_violations;
    r["scaling_violations"] = check.scaling_violations;
    r["coisotropic_nonzero"] = check.coisotropic_nonzero;
    passed = check.passed();
    std::cout << "table " << (passed ? "consistent" : "inconsistent") << " (" << check.entries << " entries)\n";
  } else {
    const auto e = capacity_oracle(capacity_shape_from_name(p.shape, p.r, p.dim, p.k, p.radii));
    r["entry"] = entry_json(e);
    std::cout << num(e.c_value) << "\n";
  }
  run.write_json("capacity.json", r, passed);
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------- displace

struct DisplaceParams {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double t = 1.0;
  double q_range = 10.0;
};

int run_displace(const Run& run, const DisplaceParams& p) {
  const auto rep = displacement_demo(DisplacementProfile::arctan(), p.samples, p.seed, p.t, p.q_range);
  json r;
  r["profile"] = "arctan(q)/pi + 1/2";
  r["samples"] = rep.samples;
  r["violations"] = rep.violations;
  r["min_margin"] = rep.min_margin;
  r["energy_bound"] = rep.energy_bound;
  r["flow_check_error"] = rep.flow_check_error;
  run.write_json("summary.json", r, rep.passed());
  std::cout << "violations " << rep.violations << "\nenergy_bound " << num(rep.energy_bound) << "\n";
  return rep.passed() ? 0 : 2;
}

// ---------------------------------------------------------------- algebra

struct AlgebraParams {
  std::size_t points = 50;
  double radius = 1.0;
  double t = 1.0;
  double dt = 1e-3;
  double tol = 1e-6;
  double inner_step = 0.1;
  std::uint64_t seed = 1;
};

int run_algebra(const Run& run, const AlgebraParams& p) {
  auto [H, K] = bounded_pair();
  AlgebraOptions opts;
  opts.inner_step = p.inner_step;
  const auto rep = algebra_check(H, K, p.points, p.radius, p.t, p.dt, p.seed, opts);
  const bool passed = rep.compose_error < p.tol && rep.inverse_error < p.tol;
  json r;
  r["points"] = rep.points;
  r["compose_error"] = rep.compose_error;
  r["inverse_error"] = rep.inverse_error;
  r["tolerance"] = p.tol;
  run.write_json("summary.json", r, passed);
  std::cout << "compose_error " << num(rep.compose_error) << "\ninverse_error " << num(rep.inverse_error) << "\n";
  return passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on the nonlinear string equation and coisotropic camel geometry", "camel_lab"};
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string out = "out";

  auto add_out = [&out](CLI::App* sub) { sub->add_option("--out", out, "Parent directory of run directories"); };
  const auto specs = CLI::IsMember({"sine-gordon", "zero"});
  const auto schemes = CLI::IsMember({"strang", "lie", "picard"});

  SimulateParams sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate the truncated flow and write the trajectory");
  simulate->add_option("--spec", sim.spec, "Nonlinearity")->check(specs);
  simulate->add_option("--scheme", sim.scheme, "Integrator")->check(schemes);
  simulate->add_option("--n", sim.n, "Galerkin order")->check(CLI::NonNegativeNumber);
  simulate->add_option("--m", sim.m, "Grid size (0 = smallest admissible)");
  simulate->add_option("--dt", sim.dt, "Time step")->check(CLI::PositiveNumber);
  simulate->add_option("--t", sim.t, "Final time");
  simulate->add_option("--t0", sim.t0, "Start time");
  simulate->add_option("--seed", sim.seed, "Seed of the random initial state");
  simulate->add_option("--R", sim.R, "E-norm radius of the random initial state")->check(CLI::NonNegativeNumber);
  simulate->add_option("--decay", sim.decay, "Spectral decay of the random initial state");
  simulate->add_option("--init", sim.init, "Initial state CSV ('# order=n' then j,a_j,b_j)")->check(CLI::ExistingFile);
  simulate->add_option("--record-every", sim.record_every, "Keep every k-th step")->check(CLI::PositiveNumber);
  simulate->add_option("--picard-tol", sim.picard_tol, "Tolerance of the Picard scheme")->check(CLI::PositiveNumber);
  add_out(simulate);

  ConvergeParams conv;
  auto* converge = app.add_subcommand("converge", "Gradient-truncation curve and flow approximation error");
  converge->add_option("--spec", conv.spec, "Nonlinearity")->check(specs);
  converge->add_option("--R", conv.R, "Ball radius")->check(CLI::PositiveNumber);
  converge->add_option("--T", conv.T, "Time horizon of the sup")->check(CLI::NonNegativeNumber);
  converge->add_option("--n-values", conv.n_values, "Truncation orders")->delimiter(',');
  converge->add_option("--samples", conv.samples, "Samples per sup")->check(CLI::PositiveNumber);
  converge->add_option("--seed", conv.seed, "Sampling seed");
  converge->add_option("--N-probe", conv.N_probe, "Order of the sampled states")->check(CLI::PositiveNumber);
  converge->add_option("--m", conv.m, "Grid size (0 = smallest admissible)");
  converge->add_option("--decay", conv.decay, "Spectral decay of sampled states");
  converge->add_flag("--skip-approx", conv.skip_approx, "Only compute the gradient-truncation curve");
  converge->add_option("--approx-t", conv.approx_t, "Time of the flow approximation error");
  converge->add_option("--N-ref", conv.N_ref, "Reference truncation")->check(CLI::PositiveNumber);
  converge->add_option("--approx-n", conv.approx_n, "Orders for the flow approximation error")->delimiter(',');
  converge->add_option("--approx-samples", conv.approx_samples, "Samples for the flow error")->check(CLI::PositiveNumber);
  converge->add_option("--dt", conv.dt, "Time step of the flow error")->check(CLI::PositiveNumber);
  converge->add_option("--scheme", conv.scheme, "Integrator of the flow error")->check(schemes);
  add_out(converge);

  CamelParams cam;
  auto* camel_cmd = app.add_subcommand("camel", "Camel points of a pendulum chain over a coisotropic cylinder");
  camel_cmd->add_option("--n", cam.n, "Degrees of freedom")->check(CLI::Range(2, 64));
  camel_cmd->add_option("--k", cam.k, "Complex dimension of the base")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--base", cam.base, "Base shape")->check(CLI::IsMember({"ball", "polydisk", "torus"}));
  camel_cmd->add_option("--r", cam.r, "Base radius")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--radii", cam.radii, "Per-factor radii (polydisk, torus)")->delimiter(',');
  camel_cmd->add_option("--A", cam.A, "Certificate |grad H| <= A + |z|")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--t", cam.t, "Time of the map");
  camel_cmd->add_option("--dt", cam.dt, "Midpoint step")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--starts", cam.starts, "Multistart count")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--tol", cam.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  camel_cmd->add_option("--bound-tol", cam.bound_tol, "Relative slack of the bound")->check(CLI::NonNegativeNumber);
  camel_cmd->add_option("--L", cam.L, "Fiber box (0 = sized from the bound)")->check(CLI::NonNegativeNumber);
  camel_cmd->add_option("--cutoff-R", cam.cutoff_R, "Also compare with the cutoff flow (0 = skip)")
      ->check(CLI::NonNegativeNumber);
  camel_cmd->add_option("--swap-samples", cam.swap_samples, "Samples for the swap check (0 = skip)")
      ->check(CLI::NonNegativeNumber);
  camel_cmd->add_option("--seed", cam.seed, "Multistart seed");
  add_out(camel_cmd);

  ModesParams mod;
  auto* modes = app.add_subcommand("modes", "Maximise a mode amplitude of the truncated flow");
  modes->add_option("--spec", mod.spec, "Nonlinearity")->check(specs);
  modes->add_option("--n", mod.n, "Galerkin order")->check(CLI::NonNegativeNumber);
  modes->add_option("--m", mod.m, "Grid size (0 = smallest admissible)");
  modes->add_option("--dt", mod.dt, "Strang step")->check(CLI::PositiveNumber);
  modes->add_option("--t", mod.t, "Target time t0");
  modes->add_option("--l", mod.l, "Mode to maximise");
  modes->add_option("--base", mod.base, "disk: mode l only; low: all |j| <= k")->check(CLI::IsMember({"disk", "low"}));
  modes->add_option("--k", mod.k, "Base order for --base low")->check(CLI::NonNegativeNumber);
  modes->add_option("--r", mod.r, "Base radius")->check(CLI::PositiveNumber);
  modes->add_option("--starts", mod.starts, "Multistart count")->check(CLI::PositiveNumber);
  modes->add_option("--sweeps", mod.sweeps, "Coordinate-search halvings")->check(CLI::NonNegativeNumber);
  modes->add_option("--polish", mod.polish, "Nelder-Mead iterations per start")->check(CLI::NonNegativeNumber);
  modes->add_option("--box", mod.box, "Box for the other modes")->check(CLI::NonNegativeNumber);
  modes->add_option("--directions", mod.directions, "Directional witnesses (0 = modulus only)")
      ->check(CLI::NonNegativeNumber);
  modes->add_option("--min-radius-fraction", mod.min_radius_fraction, "Required enclosing radius / r");
  modes->add_option("--seed", mod.seed, "Multistart seed");
  add_out(modes);

  CapacityParams capp;
  auto* capacity = app.add_subcommand("capacity", "Capacity oracle values");
  capacity->add_option("--shape", capp.shape, "Model set")
      ->check(CLI::IsMember({"ball", "cylinder", "polydisk", "torus", "coisotropic"}));
  capacity->add_option("--r", capp.r, "Radius")->check(CLI::PositiveNumber);
  capacity->add_option("--dim", capp.dim, "Ambient complex dimension")->check(CLI::PositiveNumber);
  capacity->add_option("--k", capp.k, "Complex factor of a coisotropic subspace")->check(CLI::NonNegativeNumber);
  capacity->add_option("--radii", capp.radii, "Polydisk radii")->delimiter(',');
  capacity->add_flag("--table", capp.table, "Check the full oracle table instead");
  capacity->add_option("--lambdas", capp.lambdas, "Scalings for the table check")->delimiter(',');
  add_out(capacity);

  DisplaceParams disp;
  auto* displace = app.add_subcommand("displace", "Displace V = {|p| < f'(q)} with H = -2f(q)");
  displace->add_option("--samples", disp.samples, "Sample count")->check(CLI::PositiveNumber);
  displace->add_option("--seed", disp.seed, "Sampling seed");
  displace->add_option("--t", disp.t, "Flow time");
  displace->add_option("--q-range", disp.q_range, "Sampling range of q")->check(CLI::PositiveNumber);
  add_out(displace);

  AlgebraParams alg;
  auto* algebra = app.add_subcommand("algebra", "Check the composition and inverse Hamiltonians");
  algebra->add_option("--points", alg.points, "Random points")->check(CLI::PositiveNumber);
  algebra->add_option("--radius", alg.radius, "Scale of the points")->check(CLI::PositiveNumber);
  algebra->add_option("--t", alg.t, "Time");
  algebra->add_option("--dt", alg.dt, "Midpoint step")->check(CLI::PositiveNumber);
  algebra->add_option("--tol", alg.tol, "Pass threshold")->check(CLI::PositiveNumber);
  algebra->add_option("--inner-step", alg.inner_step, "Step of the inner RK8 flows")->check(CLI::PositiveNumber);
  algebra->add_option("--seed", alg.seed, "Sampling seed");
  add_out(algebra);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::map<const CLI::App*, std::function<int(const Run&)>> runners{
      {simulate, [&](const Run& r) { return run_simulate(r, sim); }},
      {converge, [&](const Run& r) { return run_converge(r, conv); }},
      {camel_cmd, [&](const Run& r) { return run_camel(r, cam); }},
      {modes, [&](const Run& r) { return run_modes(r, mod); }},
      {capacity, [&](const Run& r) { return run_capacity(r, capp); }},
      {displace, [&](const Run& r) { return run_displace(r, disp); }},
      {algebra, [&](const Run& r) { return run_algebra(r, alg); }},
  };

  try {
    const CLI::App* sub = app.get_subcommands().front();
    Run run;
    run.command = sub->get_name();
    run.params = effective_params(*sub);
    std::string canonical = run.command + "\n";
    for (const auto& [k, v] : run.params) canonical += k + "=" + v + "\n";
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
    run.hash = hex;
    run.dir = make_run_dir(out, run.hash);
    std::cerr << "run directory: " << run.dir.string() << "\n";
    return runners.at(sub)(run);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
