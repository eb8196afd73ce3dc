#pragma once

// Time integration of the truncated string equation
//   U' = JAU + J grad h_n(t, U)
// by splitting into the exact linear flow e^{tJA} and the exact kick
// (a, b) -> (a, b - dt * grad h_n(a)), plus a Duhamel/Picard reference solver.

#include <cstddef>
#include <string>
#include <vector>

#include "camel_lab/linear_ops.hpp"
#include "camel_lab/nonlinearity.hpp"
#include "camel_lab/phase_space.hpp"

namespace camel {

enum class Scheme { Strang, Lie, Picard };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct FlowConfig {
  double dt = 1e-2;
  Scheme scheme = Scheme::Strang;
  int n = 16;                ///< Galerkin index
  std::size_t m = 0;         ///< grid size; 0 selects min_grid_size(n)
  double t0 = 0.0;
  double t1 = 1.0;
  int record_every = 1;      ///< keep every k-th step (the final state is always kept)
  double picard_tol = 1e-10; ///< only used by Scheme::Picard

  std::size_t grid() const;
  /// Throws ValidationError when dt <= 0, t1 < t0, n < 0 or the grid is too small.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseVector> states;
};

/// ||u||_E above this aborts a run with DivergenceError.
inline constexpr double kDivergenceThreshold = 1e8;

PhaseVector kick_step(const PhaseVector& u, double t_star, double dt, const NonlinearitySpec& spec,
                      int n, std::size_t m);

/// kick(dt/2 at t), e^{dt JA}, kick(dt/2 at t + dt).
PhaseVector strang_step(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec,
                        int n, std::size_t m);

/// e^{dt JA} after kick(dt at t); first order.
PhaseVector lie_step(const PhaseVector& u, double t, double dt, const NonlinearitySpec& spec, int n,
                     std::size_t m);

/// Phi_n over [cfg.t0, cfg.t1]; the last step is shortened to land on t1 exactly.
Trajectory flow(const PhaseVector& u0, const FlowConfig& cfg, const NonlinearitySpec& spec);

/// Final state of flow() without recording intermediate states.
PhaseVector flow_final(const PhaseVector& u0, const FlowConfig& cfg, const NonlinearitySpec& spec);

/// V_n^t(u0) = e^{-tJA} Phi_n^t(u0), integrated from cfg.t0 over a duration t.
PhaseVector interaction_flow(const PhaseVector& u0, double t, const FlowConfig& cfg,
                             const NonlinearitySpec& spec);

struct PicardReport {
  PhaseVector state;
  int iterations = 0;       ///< Picard sweeps summed over panels at the accepted resolution
  int panels = 0;
  double contraction = 0.0; ///< largest observed ratio of successive update norms
};

/// Mild solution u(t) = e^{tJA}u0 + int_0^t e^{(t-s)JA} J grad h_n(s, u(s)) ds by Picard
/// iteration over panels of 8 Gauss-Legendre nodes, refined until two resolutions agree
/// to tol in E-norm. t_start offsets the time argument of f.
PicardReport picard_mild_report(const PhaseVector& u0, double t, const NonlinearitySpec& spec,
                                int n, std::size_t m, double tol, double t_start = 0.0);

PhaseVector picard_mild(const PhaseVector& u0, double t, const NonlinearitySpec& spec, int n,
                        std::size_t m, double tol);

/// Discrete energy (1/2)<Au, u> + h(Pi_n u) for time-independent f (evaluated at t = 0).
double discrete_energy(const PhaseVector& u, const NonlinearitySpec& spec, int n, std::size_t m);

}  // namespace camel
