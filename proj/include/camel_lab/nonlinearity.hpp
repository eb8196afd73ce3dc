#pragma once

// Nonlinear data f(t, x, u) of u_tt = u_xx - f(t, x, u), its potential
// F = int_0^u f, the Hamiltonian part h_t(u) = (1/2pi) int F(t, x, u(x)) dx
// and the gradient grad h_t = (B^{-1} f(t, x, u(x)), 0), all evaluated
// pseudo-spectrally on an m-point grid.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "camel_lab/phase_space.hpp"

namespace camel {

using PointFn = std::function<double(double t, double x, double u)>;

struct NonlinearitySpec {
  enum class Family { SineGordon, Zero, CustomBounded };

  Family family = Family::Zero;
  PointFn f;
  /// Potential F(t, x, u) = int_0^u f; when empty it is obtained by quadrature in u.
  PointFn F;
  /// Certified sup |f|.
  double C0 = 0.0;

  std::string name() const;

  static NonlinearitySpec sine_gordon();
  static NonlinearitySpec zero();
  /// Spot-checks |f| <= C0 on probes and throws ValidationError on a violation.
  static NonlinearitySpec custom_bounded(PointFn f, double C0, PointFn F = {});
  /// CLI names: "sine-gordon", "zero".
  static NonlinearitySpec by_name(std::string_view name);
};

/// Potential value (energy units).
struct PotentialValue {
  double value = 0.0;
};

/// grad h_t(u) with the same order as u; b-components are zero.
PhaseVector grad_h(const NonlinearitySpec& spec, double t, const PhaseVector& u, std::size_t m);

/// grad h_n(u) = Pi_n grad h_t(Pi_n u), returned with the order of u.
PhaseVector grad_h_trunc(const NonlinearitySpec& spec, double t, const PhaseVector& u, int n,
                         std::size_t m);

PotentialValue h_value(const NonlinearitySpec& spec, double t, const PhaseVector& u,
                       std::size_t m);

}  // namespace camel
