#pragma once

// Mode-escape search: maximise the amplitude |U_l(t0)| = |(a_l, b_l)| of the
// truncated flow over initial states whose base modes lie in a ball and whose
// other modes have b_j = 0 and a_j in a box.

#include <cstdint>
#include <optional>
#include <vector>

#include "camel_lab/enclosing_ball.hpp"
#include "camel_lab/integrators.hpp"

namespace camel {

struct ModeBase {
  std::vector<int> modes;  ///< base modes, each with (a_j, b_j) free
  double radius = 1.0;     ///< joint ball radius of the base coefficients

  /// Disk of radius r in mode l.
  static ModeBase disk(int l, double r);
  /// Ball over all |j| <= k.
  static ModeBase low(int k, double r);
};

struct ModeSearchOptions {
  int starts = 16;
  int sweeps = 6;               ///< coordinate-search halvings
  int polish_iterations = 200;  ///< Nelder-Mead iterations per start
  double box = 0.5;             ///< |a_j| <= box for non-base modes
  std::uint64_t seed = 1;
};

struct ModeWitness {
  PhaseVector initial;
  PhaseVector final_state;
  double value = 0.0;  ///< objective at the witness
  long evaluations = 0;
};

/// Maximises |U_l(t0)| of the flow configured by cfg (cfg.n is the order, cfg.t0 the
/// start time). Start j is seeded by task_seed(seed, j), so the result is
/// non-decreasing in the number of starts.
ModeWitness maximize_mode(const NonlinearitySpec& spec, int l, const ModeBase& X, double t0,
                          const FlowConfig& cfg, const ModeSearchOptions& opts = {});

/// Maximises the projection <(a_l, b_l)(t0), (cos theta, sin theta)>, warm-started at the
/// base point that the linear flow sends furthest along theta.
ModeWitness maximize_mode_direction(const NonlinearitySpec& spec, int l, const ModeBase& X,
                                    double t0, const FlowConfig& cfg, double theta,
                                    const ModeSearchOptions& opts = {});

struct WitnessCloud {
  std::vector<Vec> points;  ///< (a_l, b_l) images
  double best_modulus = 0.0;
  Ball ball;
};

/// Directional maximisation over `directions` equally spaced angles plus the modulus
/// search; the smallest enclosing disk of the images bounds the reduced set from below.
WitnessCloud mode_witness_cloud(const NonlinearitySpec& spec, int l, const ModeBase& X, double t0,
                                const FlowConfig& cfg, int directions, const ModeSearchOptions& opts = {});

}  // namespace camel
