#include "camel_lab/linear_ops.hpp"

#include <algorithm>
#include <cmath>

#include "camel_lab/errors.hpp"

namespace camel {

double lambda(ModeIndex l) {
  const double j = l.j;
  return std::sqrt(j * j + 1.0);
}

PhaseVector apply_diag(DiagOp op, const PhaseVector& u) {
  const int n = u.order();
  std::vector<double> a(u.a().begin(), u.a().end());
  std::vector<double> b(u.b().begin(), u.b().end());
  for (int j = -n; j <= n; ++j) {
    const double lam = lambda(ModeIndex{j});
    double sa = 1.0, sb = 1.0;
    switch (op) {
      case DiagOp::B: sa = sb = lam; break;
      case DiagOp::Binv: sa = sb = 1.0 / lam; break;
      case DiagOp::A:
        sa = lam - 1.0 / lam;
        sb = lam;
        break;
    }
    a[j + n] *= sa;
    b[j + n] *= sb;
  }
  return PhaseVector(n, std::move(a), std::move(b));
}

PhaseVector apply_J(const PhaseVector& u) {
  std::vector<double> a(u.b().begin(), u.b().end());
  std::vector<double> b(u.a().begin(), u.a().end());
  for (auto& x : b) x = -x;
  return PhaseVector(u.order(), std::move(a), std::move(b));
}

double LinearBlock::norm() const {
  // sigma_max^2 is the top eigenvalue of M^T M.
  const double p = m11 * m11 + m21 * m21;
  const double q = m12 * m12 + m22 * m22;
  const double r = m11 * m12 + m21 * m22;
  const double half_tr = 0.5 * (p + q);
  const double disc = std::sqrt(0.25 * (p - q) * (p - q) + r * r);
  return std::sqrt(half_tr + disc);
}

LinearBlock exp_block(ModeIndex j, double t) {
  LinearBlock blk{j, t};
  if (j.j == 0) {
    // a' = b, b' = 0.
    blk.m12 = t;
    return blk;
  }
  const double lam = lambda(j);
  const double jj = j.j;
  const double c = std::cos(t * jj);
  const double s = std::sin(t * jj);
  blk.m11 = c;
  blk.m12 = (lam / jj) * s;
  blk.m21 = -(jj / lam) * s;
  blk.m22 = c;
  return blk;
}

PhaseVector apply_exp_tJA(const PhaseVector& u, double t) {
  return LinearPropagator(u.order(), t).apply(u);
}

double group_norm_bound(double t, int n_max) {
  double best = 0.0;
  for (int j = 0; j <= n_max; ++j) {
    // Blocks for j and -j have the same singular values.
    best = std::max(best, exp_block(ModeIndex{j}, t).norm());
  }
  return best;
}

double quadratic_energy(const PhaseVector& u) {
  double acc = 0.0;
  for (int j = -u.order(); j <= u.order(); ++j) {
    const ModeIndex l{j};
    const double lam = lambda(l);
    acc += (lam - 1.0 / lam) * u.a(l) * u.a(l) + lam * u.b(l) * u.b(l);
  }
  return 0.5 * acc;
}

LinearPropagator::LinearPropagator(int order, double t) : order_(order), t_(t) {
  if (order < 0) throw ValidationError("LinearPropagator: negative order");
  blocks_.reserve(2 * order + 1);
  for (int j = -order; j <= order; ++j) blocks_.push_back(exp_block(ModeIndex{j}, t));
}

PhaseVector LinearPropagator::apply(const PhaseVector& u) const {
  const int n = u.order();
  if (n > order_) throw ValidationError("LinearPropagator: state order exceeds propagator order");
  std::vector<double> a(2 * n + 1), b(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    const auto& blk = blocks_[j + order_];
    const double x = u.a(ModeIndex{j});
    const double y = u.b(ModeIndex{j});
    a[j + n] = blk.m11 * x + blk.m12 * y;
    b[j + n] = blk.m21 * x + blk.m22 * y;
  }
  return PhaseVector(n, std::move(a), std::move(b));
}

}  // namespace camel
