#include "camel_lab/integrators.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "camel_lab/errors.hpp"

namespace camel {
namespace {

void guard(const PhaseVector& u, double t) {
  const double norm = e_norm(u);
  if (!std::isfinite(norm) || norm > kDivergenceThreshold) {
    std::ostringstream msg;
    msg << "divergence guard: ||u||_E = " << norm << " at t = " << t
        << " (bounded nonlinearities cannot blow up; check the step size and nonlinearity)";
    throw DivergenceError(msg.str());
  }
}

PhaseVector strang_with(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec,
                        int n, std::size_t m, const LinearPropagator& lin) {
  auto w = kick_step(u, t, 0.5 * dt, spec, n, m);
  w = lin.apply(w);
  return kick_step(w, t + dt, 0.5 * dt, spec, n, m);
}

PhaseVector lie_with(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec, int n,
                     std::size_t m, const LinearPropagator& lin) {
  return lin.apply(kick_step(u, t, dt, spec, n, m));
}

// Calls visit(t, state) after every step of [cfg.t0, cfg.t1].
template <class Visit>
PhaseVector march(const PhaseVector& u0, const FlowConfig& cfg, const NonlinearitySpec& spec,
                  Visit&& visit) {
  cfg.validate();
  if (cfg.n > u0.order()) {
    throw ValidationError("flow: Galerkin index n exceeds the state order");
  }
  const std::size_t m = cfg.grid();
  const double span = cfg.t1 - cfg.t0;
  const auto steps = static_cast<long>(std::ceil(span / cfg.dt - 1e-9));
  const LinearPropagator full(u0.order(), cfg.dt);
  PhaseVector u = u0;
  for (long s = 0; s < steps; ++s) {
    const double t = cfg.t0 + static_cast<double>(s) * cfg.dt;
    const bool last = s + 1 == steps;
    const double h = last ? cfg.t1 - t : cfg.dt;
    const bool partial = std::abs(h - cfg.dt) > 1e-14 * std::max(1.0, std::abs(cfg.dt));
    switch (cfg.scheme) {
      case Scheme::Strang:
        u = partial ? strang_with(u, t, h, spec, cfg.n, m, LinearPropagator(u.order(), h))
                    : strang_with(u, t, h, spec, cfg.n, m, full);
        break;
      case Scheme::Lie:
        u = partial ? lie_with(u, t, h, spec, cfg.n, m, LinearPropagator(u.order(), h))
                    : lie_with(u, t, h, spec, cfg.n, m, full);
        break;
      case Scheme::Picard:
        u = picard_mild_report(u, h, spec, cfg.n, m, cfg.picard_tol, t).state;
        break;
    }
    const double t_next = last ? cfg.t1 : t + h;
    guard(u, t_next);
    visit(s + 1, t_next, u, last);
  }
  return u;
}

// Gauss-Legendre nodes on [-1, 1] and the spectral integration matrix
// S(i, k) = int_{-1}^{x_i} l_k(x) dx of the Lagrange basis l_k on those nodes.
struct PanelRule {
  static constexpr int kNodes = 8;
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
  std::array<std::array<double, kNodes>, kNodes> S{};

  PanelRule() {
    const gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(kNodes);
    for (int i = 0; i < kNodes; ++i) {
      gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x[i], &w[i], table);
    }
    auto lagrange = [this](int k, double s) {
      double p = 1.0;
      for (int q = 0; q < kNodes; ++q) {
        if (q != k) p *= (s - x[q]) / (x[k] - x[q]);
      }
      return p;
    };
    // Degree-7 integrands: the same 8-point rule mapped onto [-1, x_i] is exact.
    for (int i = 0; i < kNodes; ++i) {
      for (int k = 0; k < kNodes; ++k) {
        double acc = 0.0;
        for (int q = 0; q < kNodes; ++q) {
          double node = 0.0, weight = 0.0;
          gsl_integration_glfixed_point(-1.0, x[i], static_cast<std::size_t>(q), &node, &weight,
                                        table);
          acc += weight * lagrange(k, node);
        }
        S[i][k] = acc;
      }
    }
    gsl_integration_glfixed_table_free(const_cast<gsl_integration_glfixed_table*>(table));
  }
};

const PanelRule& panel_rule() {
  static const PanelRule rule;
  return rule;
}

struct PicardPass {
  PhaseVector state;
  int iterations = 0;
  double contraction = 0.0;
};

// Interaction-picture Duhamel map w(s) = u0 + int_0^s e^{-sJA} J grad h_n(e^{sJA} w) ds,
// solved panel by panel with Picard iteration at fixed panel count.
PicardPass picard_pass(const PhaseVector& u0, double t, const NonlinearitySpec& spec, int n,
                       std::size_t m, double tol, double t_start, int panels) {
  constexpr int Q = PanelRule::kNodes;
  constexpr int kMaxSweeps = 500;
  const auto& rule = panel_rule();
  const int order = u0.order();
  const double H = t / panels;

  PicardPass pass;
  PhaseVector w_start = u0;
  for (int p = 0; p < panels; ++p) {
    const double s0 = p * H;
    std::array<double, Q> s{};
    std::vector<LinearPropagator> fwd, bwd;
    fwd.reserve(Q);
    bwd.reserve(Q);
    for (int i = 0; i < Q; ++i) {
      s[i] = s0 + 0.5 * H * (rule.x[i] + 1.0);
      fwd.emplace_back(order, s[i]);
      bwd.emplace_back(order, -s[i]);
    }
    std::vector<PhaseVector> w(Q, w_start);
    std::vector<PhaseVector> G(Q, PhaseVector::zero(order));
    double prev_change = 0.0;
    bool converged = false;
    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
      ++pass.iterations;
      for (int i = 0; i < Q; ++i) {
        const PhaseVector u = fwd[i].apply(w[i]);
        const PhaseVector g = grad_h_trunc(spec, t_start + s[i], u, n, m);
        // J(g, 0) = (0, -g).
        G[i] = bwd[i].apply(apply_J(g));
      }
      double change = 0.0;
      for (int i = 0; i < Q; ++i) {
        PhaseVector next = w_start;
        for (int k = 0; k < Q; ++k) next += (0.5 * H * rule.S[i][k]) * G[k];
        change = std::max(change, e_norm(next - w[i]));
        w[i] = std::move(next);
      }
      if (prev_change > 0.0) pass.contraction = std::max(pass.contraction, change / prev_change);
      prev_change = change;
      if (change <= 0.1 * tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "picard_mild: no convergence after " << kMaxSweeps << " sweeps on panel " << p
          << " (contraction estimate " << pass.contraction << ")";
      throw ConvergenceError(msg.str());
    }
    PhaseVector w_end = w_start;
    for (int k = 0; k < Q; ++k) w_end += (0.5 * H * rule.w[k]) * G[k];
    w_start = std::move(w_end);
  }
  pass.state = apply_exp_tJA(w_start, t);
  return pass;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Strang: return "strang";
    case Scheme::Lie: return "lie";
    case Scheme::Picard: return "picard";
  }
  return "strang";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "strang") return Scheme::Strang;
  if (s == "lie") return Scheme::Lie;
  if (s == "picard") return Scheme::Picard;
  throw ValidationError("unknown scheme '" + s + "' (expected strang, lie or picard)");
}

std::size_t FlowConfig::grid() const { return m == 0 ? min_grid_size(n) : m; }

void FlowConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("FlowConfig: dt must be > 0");
  if (!(t1 >= t0)) throw ValidationError("FlowConfig: t1 must be >= t0");
  if (n < 0) throw ValidationError("FlowConfig: n must be >= 0");
  if (record_every < 1) throw ValidationError("FlowConfig: record_every must be >= 1");
  if (!grid_size_ok(grid(), n)) {
    throw ValidationError("FlowConfig: grid size must be a power of two >= 4(n+1)");
  }
  if (scheme == Scheme::Picard && !(picard_tol > 0.0)) {
    throw ValidationError("FlowConfig: picard_tol must be > 0");
  }
}

PhaseVector kick_step(const PhaseVector& u, double t_star, double dt, const NonlinearitySpec& spec,
                      int n, std::size_t m) {
  if (spec.family == NonlinearitySpec::Family::Zero) return u;
  const PhaseVector g = grad_h_trunc(spec, t_star, u, n, m);
  std::vector<double> b(u.b().begin(), u.b().end());
  const auto ga = g.a();
  for (std::size_t i = 0; i < b.size(); ++i) b[i] -= dt * ga[i];
  return PhaseVector(u.order(), std::vector<double>(u.a().begin(), u.a().end()), std::move(b));
}

PhaseVector strang_step(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec,
                        int n, std::size_t m) {
  return strang_with(u, t, dt, spec, n, m, LinearPropagator(u.order(), dt));
}

PhaseVector lie_step(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec, int n,
                     std::size_t m) {
  return lie_with(u, t, dt, spec, n, m, LinearPropagator(u.order(), dt));
}

Trajectory flow(const PhaseVector& u0, const FlowConfig& cfg, const NonlinearitySpec& spec) {
  Trajectory traj;
  traj.times.push_back(cfg.t0);
  traj.states.push_back(u0);
  march(u0, cfg, spec, [&](long step, double t, const PhaseVector& u, bool last) {
    if (last || step % cfg.record_every == 0) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  });
  return traj;
}

PhaseVector flow_final(const PhaseVector& u0, const FlowConfig& cfg, const NonlinearitySpec& spec) {
  return march(u0, cfg, spec, [](long, double, const PhaseVector&, bool) {});
}

PhaseVector interaction_flow(const PhaseVector& u0, double t, const FlowConfig& cfg,
                             const NonlinearitySpec& spec) {
  if (t < 0.0) throw ValidationError("interaction_flow: t must be >= 0");
  FlowConfig window = cfg;
  window.t1 = cfg.t0 + t;
  return apply_exp_tJA(flow_final(u0, window, spec), -t);
}

PicardReport picard_mild_report(const PhaseVector& u0, double t, const NonlinearitySpec& spec,
                                int n, std::size_t m, double tol, double t_start) {
  if (!(tol > 0.0)) throw ValidationError("picard_mild: tol must be > 0");
  if (n < 0 || n > u0.order()) throw ValidationError("picard_mild: n outside [0, order]");
  if (!grid_size_ok(m, n)) throw ValidationError("picard_mild: grid too small");
  if (t == 0.0) return {u0, 0, 0, 0.0};
  if (spec.family == NonlinearitySpec::Family::Zero) {
    return {apply_exp_tJA(u0, t), 1, 1, 0.0};
  }
  constexpr int kMaxRefinements = 12;
  int panels = std::max(1, static_cast<int>(std::ceil(std::abs(t) - 1e-12)));
  PicardPass coarse = picard_pass(u0, t, spec, n, m, tol, t_start, panels);
  for (int r = 0; r < kMaxRefinements; ++r) {
    panels *= 2;
    PicardPass fine = picard_pass(u0, t, spec, n, m, tol, t_start, panels);
    const double diff = e_norm(fine.state - coarse.state);
    if (diff < tol) {
      return {std::move(fine.state), fine.iterations, panels,
              std::max(fine.contraction, coarse.contraction)};
    }
    coarse = std::move(fine);
  }
  throw ConvergenceError("picard_mild: quadrature refinement did not reach tol");
}

PhaseVector picard_mild(const PhaseVector& u0, double t, const NonlinearitySpec& spec, int n,
                        std::size_t m, double tol) {
  return picard_mild_report(u0, t, spec, n, m, tol).state;
}

double discrete_energy(const PhaseVector& u, const NonlinearitySpec& spec, int n, std::size_t m) {
  return quadratic_energy(u) + h_value(spec, 0.0, u.truncated(n), m).value;
}

}  // namespace camel
