#include "camel_lab/hamiltonian_algebra.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "camel_lab/errors.hpp"
#include "camel_lab/parallel.hpp"

namespace camel {
namespace {

using Rhs = std::function<void(double, const double*, double*)>;

int rhs_adapter(double t, const double y[], double dydt[], void* params) {
  (*static_cast<const Rhs*>(params))(t, y, dydt);
  return GSL_SUCCESS;
}

Vec integrate_rk8(const Rhs& rhs, Vec y, double t0, double t1, double max_step) {
  if (t1 == t0) return y;
  const auto dim = static_cast<std::size_t>(y.size());
  const auto steps = static_cast<long>(std::ceil(std::abs(t1 - t0) / max_step - 1e-12));
  const double h = (t1 - t0) / static_cast<double>(steps);
  std::unique_ptr<gsl_odeiv2_step, decltype(&gsl_odeiv2_step_free)> stepper(
      gsl_odeiv2_step_alloc(gsl_odeiv2_step_rk8pd, dim), &gsl_odeiv2_step_free);
  gsl_odeiv2_system sys{&rhs_adapter, nullptr, dim, const_cast<Rhs*>(&rhs)};
  Vec err(y.size());
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * h;
    if (gsl_odeiv2_step_apply(stepper.get(), t, h, y.data(), err.data(), nullptr, nullptr, &sys) !=
        GSL_SUCCESS) {
      throw DivergenceError("inner flow: Runge-Kutta step failed");
    }
  }
  if (!y.allFinite()) throw DivergenceError("inner flow: non-finite state");
  return y;
}

// Flow of X_H together with its linearisation applied to v, from t0 to t1.
std::pair<Vec, Vec> flow_with_tangent(const GenericHamiltonianSystem& H, const Vec& w, const Vec& v,
                                      double t0, double t1, const AlgebraOptions& opts) {
  const Eigen::Index d = w.size();
  Rhs rhs = [&H, d, &opts](double t, const double* y, double* dy) {
    const Eigen::Map<const Vec> pos(y, d), tan(y + d, d);
    Eigen::Map<Vec>(dy, d) = H.vector_field(t, pos);
    const double tn = tan.norm();
    if (tn == 0.0) {
      Eigen::Map<Vec>(dy + d, d).setZero();
      return;
    }
    const double eps = opts.fd_step * (1.0 + pos.norm()) / tn;
    Eigen::Map<Vec>(dy + d, d) =
        (H.vector_field(t, pos + eps * tan) - H.vector_field(t, pos - eps * tan)) / (2.0 * eps);
  };
  Vec y(2 * d);
  y << w, v;
  y = integrate_rk8(rhs, std::move(y), t0, t1, opts.inner_step);
  return {y.head(d), y.tail(d)};
}

void require_value(const GenericHamiltonianSystem& sys, const char* who) {
  if (!sys.grad) throw ValidationError(std::string(who) + ": gradient is empty");
  if (sys.dim <= 0 || sys.dim % 2) throw ValidationError(std::string(who) + ": dim must be even and > 0");
}

// grad = -J X, since X = J grad and J^2 = -1.
Vec gradient_of_field(const Vec& X) { return -apply_standard_J(X); }

}  // namespace

double cutoff_profile(double s, double R) {
  if (s <= R) return 1.0;
  if (s >= 2.0 * R) return 0.0;
  const double x = (s - R) / R;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double cutoff_profile_derivative(double s, double R) {
  if (s <= R || s >= 2.0 * R) return 0.0;
  const double x = (s - R) / R;
  return -30.0 * x * x * (1.0 - x) * (1.0 - x) / R;
}

GenericHamiltonianSystem cutoff_hamiltonian(const GenericHamiltonianSystem& sys, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ValidationError("cutoff_hamiltonian: R must be > 0");
  require_value(sys, "cutoff_hamiltonian");
  if (!sys.value) throw ValidationError("cutoff_hamiltonian: H values are required, not only grad H");
  const Vec origin = Vec::Zero(sys.dim);
  for (double t : {-1.0, 0.0, 1.0}) {
    if (std::abs(sys.value(t, origin)) > 1e-12) throw ValidationError("cutoff_hamiltonian: H_t(0) must be 0");
  }
  double slope = 0.0;
  for (int i = 0; i <= 1000; ++i) slope = std::max(slope, std::abs(cutoff_profile_derivative(R * (1.0 + i / 1000.0), R)));
  if (slope > 2.0 / R) throw PropertyViolation("cutoff_hamiltonian: profile slope exceeds 2/R");

  GenericHamiltonianSystem out;
  out.dim = sys.dim;
  out.value = [sys, R](double t, const Vec& z) { return cutoff_profile(z.norm(), R) * sys.value(t, z); };
  out.grad = [sys, R](double t, const Vec& z) -> Vec {
    const double s = z.norm();
    if (s <= R) return sys.grad(t, z);
    if (s >= 2.0 * R) return Vec::Zero(z.size());
    return cutoff_profile(s, R) * sys.grad(t, z) + (sys.value(t, z) * cutoff_profile_derivative(s, R) / s) * z;
  };
  if (sys.certificate) out.certificate = GrowthCertificate{5.0 * sys.certificate->A, 3.0 * sys.certificate->B};
  return out;
}

CutoffProbe probe_cutoff(const GenericHamiltonianSystem& original, double R, std::size_t samples,
                         std::uint64_t seed) {
  if (!original.certificate) throw ValidationError("probe_cutoff: system has no growth certificate");
  const auto G = cutoff_hamiltonian(original, R);
  const double A = original.certificate->A, B = original.certificate->B;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CutoffProbe probe;
  probe.samples = samples;
  probe.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    Vec z(original.dim);
    for (auto& x : z) x = gauss(rng);
    z *= 3.0 * R * unit(rng) / std::max(z.norm(), 1e-300);
    const double t = 2.0 * unit(rng) - 1.0;
    probe.max_excess = std::max(probe.max_excess, G.grad(t, z).norm() - (5.0 * A + 3.0 * B * z.norm()));
  }
  return probe;
}

Vec flow_rk8(const Vec& z, double t0, double t1, const GenericHamiltonianSystem& sys, double max_step) {
  if (!(max_step > 0.0)) throw ValidationError("flow_rk8: max_step must be > 0");
  const Eigen::Index d = z.size();
  Rhs rhs = [&sys, d](double t, const double* y, double* dy) {
    Eigen::Map<Vec>(dy, d) = sys.vector_field(t, Eigen::Map<const Vec>(y, d));
  };
  return integrate_rk8(rhs, z, t0, t1, max_step);
}

GenericHamiltonianSystem compose_hamiltonians(const GenericHamiltonianSystem& H,
                                              const GenericHamiltonianSystem& K,
                                              const AlgebraOptions& opts) {
  require_value(H, "compose_hamiltonians");
  require_value(K, "compose_hamiltonians");
  if (H.dim != K.dim) throw ValidationError("compose_hamiltonians: dimension mismatch");
  GenericHamiltonianSystem out;
  out.dim = H.dim;
  // X_{H#K}(t, z) = X_H(t, z) + D phi^H_t(w) X_K(t, w) with w = (phi^H_t)^{-1}(z).
  out.grad = [H, K, opts](double t, const Vec& z) -> Vec {
    const Vec w = flow_rk8(z, t, 0.0, H, opts.inner_step);
    const auto [image, pushed] = flow_with_tangent(H, w, K.vector_field(t, w), 0.0, t, opts);
    (void)image;
    return gradient_of_field(H.vector_field(t, z) + pushed);
  };
  if (H.value && K.value) {
    out.value = [H, K, opts](double t, const Vec& z) {
      return H.value(t, z) + K.value(t, flow_rk8(z, t, 0.0, H, opts.inner_step));
    };
  }
  return out;
}

GenericHamiltonianSystem invert_hamiltonian(const GenericHamiltonianSystem& H, const AlgebraOptions& opts) {
  require_value(H, "invert_hamiltonian");
  GenericHamiltonianSystem out;
  out.dim = H.dim;
  // X_{H-bar}(t, z) = -(D phi^H_t(z))^{-1} X_H(t, y) with y = phi^H_t(z); the inverse
  // derivative is the linearised backward flow from y.
  out.grad = [H, opts](double t, const Vec& z) -> Vec {
    const Vec y = flow_rk8(z, 0.0, t, H, opts.inner_step);
    const auto [back, pulled] = flow_with_tangent(H, y, H.vector_field(t, y), t, 0.0, opts);
    (void)back;
    return gradient_of_field(-pulled);
  };
  if (H.value) {
    out.value = [H, opts](double t, const Vec& z) { return -H.value(t, flow_rk8(z, 0.0, t, H, opts.inner_step)); };
  }
  return out;
}

AlgebraReport algebra_check(const GenericHamiltonianSystem& H, const GenericHamiltonianSystem& K,
                            std::size_t count, double radius, double t, double dt,
                            std::uint64_t seed, const AlgebraOptions& opts) {
  if (!(dt > 0.0)) throw ValidationError("algebra_check: dt must be > 0");
  const auto HK = compose_hamiltonians(H, K, opts);
  const auto Hbar = invert_hamiltonian(H, opts);
  MidpointOptions mid;
  mid.tol = 1e-13;
  std::vector<double> comp(count), inv(count);
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(task_seed(seed, i));
    std::normal_distribution<double> gauss(0.0, radius);
    Vec z(H.dim);
    for (auto& x : z) x = gauss(rng);
    const Vec lhs = flow_generic(z, 0.0, t, dt, HK, mid);
    const Vec rhs = flow_generic(flow_generic(z, 0.0, t, dt, K, mid), 0.0, t, dt, H, mid);
    comp[i] = (lhs - rhs).norm();
    const Vec there = flow_generic(z, 0.0, t, dt, H, mid);
    inv[i] = (flow_generic(there, 0.0, t, dt, Hbar, mid) - z).norm();
  });
  AlgebraReport rep;
  rep.points = count;
  rep.t = t;
  rep.dt = dt;
  for (std::size_t i = 0; i < count; ++i) {
    rep.compose_error = std::max(rep.compose_error, comp[i]);
    rep.inverse_error = std::max(rep.inverse_error, inv[i]);
  }
  return rep;
}

}  // namespace camel
