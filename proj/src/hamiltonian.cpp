#include "camel_lab/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "camel_lab/errors.hpp"

namespace camel {

Vec GenericHamiltonianSystem::vector_field(double t, const Vec& z) const {
  return apply_standard_J(grad(t, z));
}

void GenericHamiltonianSystem::validate(int probes, double radius, double t_max,
                                        unsigned long long seed) const {
  if (dim <= 0 || dim % 2 != 0) throw ValidationError("Hamiltonian system: dim must be even and > 0");
  if (!grad) throw ValidationError("Hamiltonian system: gradient is empty");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < probes; ++i) {
    Vec z(dim);
    for (int k = 0; k < dim; ++k) z[k] = gauss(rng);
    z *= radius * std::pow(unit(rng), 1.0 / dim) / std::max(z.norm(), 1e-300);
    const double t = t_max * (2.0 * unit(rng) - 1.0);
    const Vec g = grad(t, z);
    if (g.size() != dim || !g.allFinite()) {
      throw ValidationError("Hamiltonian system: gradient is not finite on a probe");
    }
    if (certificate) {
      const double bound = certificate->A + certificate->B * z.norm();
      if (g.norm() > bound * (1.0 + 1e-12) + 1e-12) {
        std::ostringstream msg;
        msg << "Hamiltonian system: |grad H| = " << g.norm() << " exceeds certificate A + B|z| = "
            << bound << " at |z| = " << z.norm();
        throw ValidationError(msg.str());
      }
    }
  }
}

Vec apply_standard_J(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    out[i] = v[i + 1];
    out[i + 1] = -v[i];
  }
  return out;
}

Mat standard_omega(int dim) {
  Mat omega = Mat::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    omega(i, i + 1) = 1.0;
    omega(i + 1, i) = -1.0;
  }
  return omega;
}

Vec midpoint_step_generic(const Vec& z, double t, double dt, const GenericHamiltonianSystem& sys,
                          const MidpointOptions& opts) {
  const double t_mid = t + 0.5 * dt;
  Vec next = z + dt * sys.vector_field(t_mid, z);
  for (int it = 0; it < opts.max_iterations; ++it) {
    Vec updated = z + dt * sys.vector_field(t_mid, 0.5 * (z + next));
    const double change = (updated - next).norm();
    next = std::move(updated);
    if (!std::isfinite(change) || !next.allFinite()) break;
    if (change <= opts.tol * (1.0 + next.norm())) return next;
  }
  std::ostringstream msg;
  msg << "implicit midpoint: stage solve did not converge at t = " << t << ", dt = " << dt
      << " (reduce dt)";
  throw ConvergenceError(msg.str());
}

Vec flow_generic(const Vec& z, double t0, double t1, double dt, const GenericHamiltonianSystem& sys,
                 const MidpointOptions& opts) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw ValidationError("flow_generic: dt must be nonzero");
  const double span = t1 - t0;
  if (span == 0.0) return z;
  const double h = std::copysign(std::abs(dt), span);
  const auto steps = static_cast<long>(std::ceil(std::abs(span) / std::abs(dt) - 1e-9));
  Vec state = z;
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * h;
    const double step = (s + 1 == steps) ? t1 - t : h;
    state = midpoint_step_generic(state, t, step, sys, opts);
  }
  return state;
}

MapFn time_map(GenericHamiltonianSystem sys, double t0, double t1, double dt) {
  return [sys = std::move(sys), t0, t1, dt](const Vec& z) { return flow_generic(z, t0, t1, dt, sys); };
}

Mat jacobian_fd(const MapFn& map, const Vec& z, double h) {
  if (!(h > 0.0)) throw ValidationError("jacobian_fd: h must be > 0");
  const Vec f0 = map(z);
  Mat jac(f0.size(), z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Vec plus = z, minus = z;
    plus[i] += h;
    minus[i] -= h;
    jac.col(i) = (map(plus) - map(minus)) / (2.0 * h);
  }
  return jac;
}

}  // namespace camel
