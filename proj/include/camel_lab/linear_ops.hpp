#pragma once

// Diagonal operators of the string equation and the exact linear flow e^{tJA}.
//
// In coefficients, A = diag(lambda - 1/lambda) on a and diag(lambda) on b, and
// J(a, b) = (b, -a). The linear system a' = lambda b, b' = -(j^2/lambda) a
// is solved exactly plane by plane.

#include <vector>

#include "camel_lab/phase_space.hpp"

namespace camel {

/// lambda_j = sqrt(j^2 + 1).
double lambda(ModeIndex l);

enum class DiagOp { B, Binv, A };

PhaseVector apply_diag(DiagOp op, const PhaseVector& u);
PhaseVector apply_J(const PhaseVector& u);

/// 2x2 block of e^{tJA} acting on (a_j, b_j).
struct LinearBlock {
  ModeIndex j;
  double t = 0.0;
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  double det() const { return m11 * m22 - m12 * m21; }
  /// Largest singular value.
  double norm() const;
};

LinearBlock exp_block(ModeIndex j, double t);

PhaseVector apply_exp_tJA(const PhaseVector& u, double t);

/// max_{|j| <= n_max} ||block_j(t)||_2, the j = 0 shear included.
double group_norm_bound(double t, int n_max);

/// Quadratic energy (1/2)<Au, u>.
double quadratic_energy(const PhaseVector& u);

/// Precomputed blocks for a fixed step t and order; read-only after construction,
/// so one instance may be shared by concurrent integrations.
class LinearPropagator {
 public:
  LinearPropagator(int order, double t);

  int order() const { return order_; }
  double t() const { return t_; }

  /// Requires u.order() <= order().
  PhaseVector apply(const PhaseVector& u) const;

 private:
  int order_;
  double t_;
  std::vector<LinearBlock> blocks_;  // j = -order .. order
};

}  // namespace camel
