// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Usage: acceptance [id ...]   (no ids = all)
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "camel_lab/capacity.hpp"
#include "camel_lab/cylinder.hpp"
#include "camel_lab/displacement.hpp"
#include "camel_lab/galerkin.hpp"
#include "camel_lab/hamiltonian_algebra.hpp"
#include "camel_lab/integrators.hpp"
#include "camel_lab/linear_ops.hpp"
#include "camel_lab/modes.hpp"
#include "camel_lab/systems.hpp"

using namespace camel;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Per-mode linear system in physical amplitudes, integrated with adaptive Runge-Kutta-Fehlberg 7(8).
std::array<double, 2> ode_image(int j, double t, double a0, double b0) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double lam = std::sqrt(j * j + 1.0);
  const double w = 1.0 / std::sqrt(lam);
  State y{a0 * w, -b0 * w};
  auto rhs = [lam](const State& s, State& d, double) {
    d[0] = -lam * s[1];
    d[1] = (lam - 1.0 / lam) * s[0];
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-15, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, rhs, y, 0.0, t, t / 1000.0);
  return {y[0] / w, -y[1] / w};
}

Outcome linear_flow_oracle() {
  double worst = 0.0;
  for (int j = -64; j <= 64; ++j) {
    for (double t : {0.1, -0.1, 1.0, -1.0, 10.0, -10.0}) {
      const auto blk = exp_block(ModeIndex{j}, t);
      const auto c1 = ode_image(j, t, 1.0, 0.0);
      const auto c2 = ode_image(j, t, 0.0, 1.0);
      worst = std::max({worst, std::abs(blk.m11 - c1[0]), std::abs(blk.m21 - c1[1]), std::abs(blk.m12 - c2[0]),
                        std::abs(blk.m22 - c2[1])});
    }
  }
  return {worst < 1e-10, fmt("max abs error %.3g (limit 1e-10)", worst)};
}

Outcome symplecticity() {
  const int n = 16;
  const auto sg = NonlinearitySpec::sine_gordon();
  const std::size_t m = min_grid_size(n);
  const int N = 2 * (2 * n + 1);
  // Flat layout [a_{-n..n}, b_{-n..n}]: omega = [[0, I], [-I, 0]].
  Mat omega = Mat::Zero(N, N);
  for (int i = 0; i < N / 2; ++i) {
    omega(i, N / 2 + i) = 1.0;
    omega(N / 2 + i, i) = -1.0;
  }
  std::mt19937_64 rng(20240);
  std::uniform_real_distribution<double> radius(0.1, 5.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto u = sample_ball(rng, n, radius(rng), s % 2 ? 0.0 : 1.0);
    const auto flat = u.flat();
    Mat D(N, N);
    const double h = 1e-6;
    for (int c = 0; c < N; ++c) {
      auto plus = flat, minus = flat;
      plus[c] += h;
      minus[c] -= h;
      const auto fp = strang_step(PhaseVector::from_flat(n, plus), 0.0, 1e-2, sg, n, m).flat();
      const auto fm = strang_step(PhaseVector::from_flat(n, minus), 0.0, 1e-2, sg, n, m).flat();
      for (int r = 0; r < N; ++r) D(r, c) = (fp[r] - fm[r]) / (2.0 * h);
    }
    worst = std::max(worst, (D.transpose() * omega * D - omega).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-6, fmt("max |D^T Omega D - Omega| / |Omega| = %.3g over 100 states (limit 1e-6)", worst)};
}

Outcome mild_consistency() {
  const int n = 8;
  const auto sg = NonlinearitySpec::sine_gordon();
  const std::size_t m = min_grid_size(n);
  std::mt19937_64 rng(77);
  const auto u0 = sample_ball(rng, n, 1.0);
  const auto ref = picard_mild(u0, 1.0, sg, n, m, 1e-10);
  std::vector<double> errs;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    FlowConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.dt = dt;
    cfg.t1 = 1.0;
    errs.push_back(e_norm(flow_final(u0, cfg, sg) - ref));
  }
  // Least-squares slope of log err against log dt (dt halves each time).
  const double x[3] = {0.0, -std::log(2.0), -2.0 * std::log(2.0)};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    const double y = std::log(errs[i]);
    sx += x[i];
    sy += y;
    sxx += x[i] * x[i];
    sxy += x[i] * y;
  }
  const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  const bool ok = std::abs(order - 2.0) <= 0.1 && errs[2] < 1e-5;
  return {ok, fmt("order %.4f (2 +- 0.1), finest error %.3g (limit 1e-5)", order, errs[2])};
}

Outcome gradient_bound() {
  const auto sg = NonlinearitySpec::sine_gordon();
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> order(0, 64);
  std::uniform_real_distribution<double> radius(0.01, 50.0), t(-5.0, 5.0);
  std::normal_distribution<double> g;
  double worst = 0.0;
  int violations = 0;
  for (int s = 0; s < 1000; ++s) {
    const int n = order(rng);
    PhaseVector u;
    if (s % 3 == 0) {
      // Rough states: unscaled Gaussian coefficients.
      std::vector<double> a(2 * n + 1), b(2 * n + 1);
      for (auto& x : a) x = 3.0 * g(rng);
      for (auto& x : b) x = 3.0 * g(rng);
      u = make_state(n, a, b);
    } else {
      u = sample_ball(rng, n, radius(rng), s % 3 == 1 ? 1.0 : 0.0);
    }
    const std::size_t m = (s % 2 ? 2 : 1) * min_grid_size(n);
    const double norm = e_norm(grad_h(sg, t(rng), u, m));
    worst = std::max(worst, norm);
    if (norm > 1.0) ++violations;
  }
  return {violations == 0, fmt("%g violations, max |grad h|_E = %.6f (limit 1)", violations, worst)};
}

Outcome galerkin_convergence() {
  const auto rep = epsilon_curve(NonlinearitySpec::sine_gordon(), 2.0, 1.0, {4, 8, 16, 32, 64}, 200, 5, 128);
  const auto& iso = rep.isotonic_errors;
  bool strict = true;
  for (std::size_t i = 1; i < iso.size(); ++i) strict = strict && iso[i] < iso[i - 1];
  const bool ok = strict && iso.back() < iso.front() / 10.0;
  std::string detail = "eps =";
  for (double e : iso) detail += fmt(" %.3g", e);
  detail += strict ? ", strictly decreasing" : ", NOT strictly decreasing";
  detail += fmt(", eps(4)/eps(64) = %.1f (limit > 10)", iso.front() / iso.back());
  return {ok, detail};
}

Outcome camel_bound_criterion() {
  const auto sys = pendulum_chain(2, 0.5);
  const double t = 0.2, r = 1.0;
  CoisotropicCylinder cyl{1, 2, BaseShape::ball(r), auto_fiber_box(*sys.certificate, r, t)};
  CamelSearchOptions opts;
  opts.starts = 64;
  const auto set = find_camel_points(time_map(sys, 0.0, t, 1e-3), cyl, t, opts);
  const double limit = 1.5 / (2.0 - std::exp(0.2)) * 1.01;
  int violations = 0;
  double worst = 0.0;
  for (const auto& z : set.points) {
    worst = std::max(worst, z.norm());
    if (z.norm() > limit) ++violations;
  }
  const auto rep = camel_bound_check(sys, cyl, t, set);
  const bool ok = !set.points.empty() && violations == 0 && rep.passed() && t < std::log(2.0) / 3.0;
  return {ok, fmt("%g camel points, max |z| = %.4f, limit %.4f", static_cast<double>(set.points.size()), worst, limit) +
                  fmt(", %g violations", violations + static_cast<double>(rep.envelope_violations))};
}

Outcome displacement() {
  const auto prof = DisplacementProfile::arctan();
  const auto rep = displacement_demo(prof, 100000, 31);
  // sup of arctan(q)/pi + 1/2 is 1.
  const bool ok = rep.samples == 100000 && rep.violations == 0 && rep.energy_bound == 2.0 * 1.0;
  return {ok, fmt("%g violations over 1e5 samples, energy bound %.17g (= 2 sup f = 2)",
                  static_cast<double>(rep.violations), rep.energy_bound)};
}

Outcome hamiltonian_algebra() {
  auto [H, K] = bounded_pair();
  const auto rep = algebra_check(H, K, 50, 1.0, 1.0, 1e-3, 8);
  const bool ok = rep.points == 50 && rep.compose_error < 1e-6 && rep.inverse_error < 1e-6;
  return {ok, fmt("composition error %.3g, inverse error %.3g on 50 points (limit 1e-6)", rep.compose_error,
                  rep.inverse_error)};
}

Outcome non_squeezing_witness() {
  FlowConfig cfg;
  cfg.n = 16;
  cfg.dt = 1e-2;
  ModeSearchOptions opts;
  opts.starts = 8;  // modulus search; plus 248 directional starts = 256
  const auto cloud =
      mode_witness_cloud(NonlinearitySpec::sine_gordon(), 1, ModeBase::disk(1, 1.0), 1.0, cfg, 248, opts);
  return {cloud.ball.radius >= 0.9,
          fmt("enclosing radius %.4f (limit >= 0.9), best |U_1(1)| = %.4f", cloud.ball.radius, cloud.best_modulus)};
}

Outcome oracle_consistency() {
  const auto table = capacity_table();
  const auto check = check_capacity_table(table, {0.25, 0.5, 2.0, 3.0, 10.0});
  std::size_t cois = 0;
  for (const auto& e : table) {
    if (e.shape.kind == CapacityShape::Kind::Coisotropic) {
      ++cois;
      if (e.c_value != 0.0 || e.gamma_value != 0.0) return {false, "coisotropic entry nonzero"};
    }
  }
  const bool ok = check.passed() && cois > 0;
  return {ok, fmt("%g entries, %g order violations, %g scaling violations", static_cast<double>(check.entries),
                  static_cast<double>(check.order_violations), static_cast<double>(check.scaling_violations))};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "linear-flow oracle", 10, linear_flow_oracle},
      {2, "symplecticity of strang_step", 60, symplecticity},
      {3, "mild-solution consistency", 120, mild_consistency},
      {4, "gradient bound", 30, gradient_bound},
      {5, "galerkin convergence", 300, galerkin_convergence},
      {6, "camel bound", 120, camel_bound_criterion},
      {7, "displacement", 10, displacement},
      {8, "hamiltonian algebra", 60, hamiltonian_algebra},
      {9, "non-squeezing witness", 600, non_squeezing_witness},
      {10, "capacity oracle consistency", 1, oracle_consistency},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = out.ok && in_time;
    if (!ok) ++failures;
    std::printf("[%s] AC%d %s: %s; %.2f s (budget %g s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
