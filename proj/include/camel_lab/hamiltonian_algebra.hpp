#pragma once

// Operations on time-dependent Hamiltonians of R^{2n}: the radial cutoff
// G = chi(|z|) H, the composition H#K generating phi^H o phi^K and the
// inverse H-bar generating (phi^H)^{-1}.

#include <cstdint>

#include "camel_lab/hamiltonian.hpp"

namespace camel {

/// Quintic smoothstep: 1 on [0, R], 0 on [2R, inf), |chi'| <= 15/(8R).
double cutoff_profile(double s, double R);
double cutoff_profile_derivative(double s, double R);

/// G_t(z) = chi(|z|) H_t(z). Needs sys.value with H_t(0) = 0. With a certificate
/// |grad H| <= A + B|z| the result carries the certificate (5A, 3B).
GenericHamiltonianSystem cutoff_hamiltonian(const GenericHamiltonianSystem& sys, double R);

struct CutoffProbe {
  std::size_t samples = 0;
  double max_excess = 0.0;  ///< max of |grad G| - (5A + 3B|z|)
};

/// Samples |z| <= 3R uniformly in radius and evaluates the cutoff gradient bound.
CutoffProbe probe_cutoff(const GenericHamiltonianSystem& original, double R, std::size_t samples,
                         std::uint64_t seed);

struct AlgebraOptions {
  double inner_step = 0.1;  ///< maximum step of the 8th-order inner flows
  double fd_step = 1e-5;    ///< relative step of the directional derivative of X_H
};

/// Flow of sys from t0 to t1 (either direction) by fixed-step 8th-order Runge-Kutta.
Vec flow_rk8(const Vec& z, double t0, double t1, const GenericHamiltonianSystem& sys,
             double max_step = 0.1);

/// H#K(t, z) = H(t, z) + K(t, (phi^H_t)^{-1} z).
GenericHamiltonianSystem compose_hamiltonians(const GenericHamiltonianSystem& H,
                                              const GenericHamiltonianSystem& K,
                                              const AlgebraOptions& opts = {});

/// H-bar(t, z) = -H(t, phi^H_t(z)).
GenericHamiltonianSystem invert_hamiltonian(const GenericHamiltonianSystem& H,
                                            const AlgebraOptions& opts = {});

struct AlgebraReport {
  std::size_t points = 0;
  double t = 0.0;
  double dt = 0.0;
  double compose_error = 0.0;  ///< max |phi^{H#K}_t(z) - phi^H_t(phi^K_t(z))|
  double inverse_error = 0.0;  ///< max |phi^{H-bar}_t(phi^H_t(z)) - z|
};

/// Both identities on `count` Gaussian points of scale `radius`, all flows by
/// implicit midpoint with step dt.
AlgebraReport algebra_check(const GenericHamiltonianSystem& H, const GenericHamiltonianSystem& K,
                            std::size_t count, double radius, double t, double dt,
                            std::uint64_t seed, const AlgebraOptions& opts = {});

}  // namespace camel
