#pragma once

// Convergence of the Galerkin truncation: the gradient-truncation curve
// eps_R(n) = sup |grad h_t(u) - grad h_n(u)| over t in [-T, T], |u| <= R,
// and the interaction-picture flow error |V^t_{N_ref}(u) - V^t_n(u)|.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "camel_lab/integrators.hpp"
#include "camel_lab/nonlinearity.hpp"
#include "camel_lab/phase_space.hpp"

namespace camel {

/// Point of the ball |u|_E <= R of the given order: direction with coefficient
/// profile lambda_j^{-decay}, radius R * sqrt(U).
PhaseVector sample_ball(std::mt19937_64& rng, int order, double R, double decay = 1.0);

struct ConvergenceReport {
  std::string spec;
  double R = 0.0;
  double T = 0.0;
  int N_probe = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double decay = 1.0;
  std::vector<int> n_values;
  std::vector<double> errors;           ///< sampled maxima
  std::vector<double> isotonic_errors;  ///< non-increasing least-squares fit of errors
};

/// Least-squares non-increasing fit (pool adjacent violators).
std::vector<double> isotonic_nonincreasing(std::span<const double> y);

/// eps_R(n) for each n in n_values. m = 0 selects min_grid_size(N_probe).
ConvergenceReport epsilon_curve(const NonlinearitySpec& spec, double R, double T,
                                const std::vector<int>& n_values, int samples, std::uint64_t seed,
                                int N_probe, std::size_t m = 0, double decay = 1.0);

/// max over sampled |u| <= R (order N_ref) of |V^t_{N_ref}(u) - V^t_n(u)|_E.
/// cfg supplies dt, scheme and t0; cfg.n and cfg.t1 are ignored, cfg.m = 0 sizes each grid.
double approx_error(const NonlinearitySpec& spec, double t, int n, int N_ref, double R, int samples,
                    std::uint64_t seed, const FlowConfig& cfg, double decay = 1.0);

/// C(t) = max_n approx_error(n) / eps(n) over entries with eps(n) > 0.
double gronwall_constant(std::span<const double> approx_errors, std::span<const double> eps);

/// "# key=value" metadata lines followed by "n,raw_error,isotonic_error" rows.
std::string to_csv(const ConvergenceReport& report);

}  // namespace camel
