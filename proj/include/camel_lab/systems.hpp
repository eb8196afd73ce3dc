#pragma once
// Concrete Hamiltonian systems used by the tool, the acceptance suite and the bindings.
#include <utility>

#include "camel_lab/hamiltonian.hpp"

namespace camel {

/// Chain of n coupled pendula
///   H = |p|^2 / 2 + kappa sum_{i<n} (1 - cos(q_i - q_{i+1})),
/// with kappa chosen so that |grad H| <= A + |z| (certificate (A, 1)).
GenericHamiltonianSystem pendulum_chain(int n, double A);

/// Coupling constant of pendulum_chain(n, A).
double pendulum_chain_kappa(int n, double A);

/// Bounded, time-dependent pair on R^4:
///   H = 0.8 (1 - cos q1) + 0.5 sin(p1) cos(q2) (1 + 0.3 t),
///   K = 0.6 cos(p2) + 0.3 sin(q1 + q2).
std::pair<GenericHamiltonianSystem, GenericHamiltonianSystem> bounded_pair();

}  // namespace camel
