#include "camel_lab/systems.hpp"

#include <cmath>
#include <numbers>

#include "camel_lab/errors.hpp"

namespace camel {

double pendulum_chain_kappa(int n, double A) {
  if (n < 2) throw ValidationError("pendulum_chain: need at least 2 degrees of freedom");
  if (!(A > 0.0) || !std::isfinite(A)) throw ValidationError("pendulum_chain: A must be positive");
  // |D^T s| <= |D| sqrt(n-1) for the path incidence matrix D, |D| = 2 cos(pi / 2n).
  const double incidence = 2.0 * std::cos(std::numbers::pi / (2.0 * n));
  return A / (std::sqrt(n - 1.0) * incidence);
}

GenericHamiltonianSystem pendulum_chain(int n, double A) {
  const double kappa = pendulum_chain_kappa(n, A);
  GenericHamiltonianSystem sys;
  sys.dim = 2 * n;
  sys.value = [n, kappa](double, const Vec& z) {
    double h = 0.0;
    for (int i = 0; i < n; ++i) h += 0.5 * z[2 * i + 1] * z[2 * i + 1];
    for (int i = 0; i + 1 < n; ++i) h += kappa * (1.0 - std::cos(z[2 * i] - z[2 * i + 2]));
    return h;
  };
  sys.grad = [n, kappa](double, const Vec& z) {
    Vec g = Vec::Zero(2 * n);
    for (int i = 0; i < n; ++i) g[2 * i + 1] = z[2 * i + 1];
    for (int i = 0; i + 1 < n; ++i) {
      const double s = kappa * std::sin(z[2 * i] - z[2 * i + 2]);
      g[2 * i] += s;
      g[2 * i + 2] -= s;
    }
    return g;
  };
  sys.certificate = GrowthCertificate{A, 1.0};
  return sys;
}

std::pair<GenericHamiltonianSystem, GenericHamiltonianSystem> bounded_pair() {
  GenericHamiltonianSystem H;
  H.dim = 4;
  H.value = [](double t, const Vec& z) {
    return 0.8 * (1.0 - std::cos(z[0])) + 0.5 * std::sin(z[1]) * std::cos(z[2]) * (1.0 + 0.3 * t);
  };
  H.grad = [](double t, const Vec& z) {
    const double s = 1.0 + 0.3 * t;
    Vec g(4);
    g << 0.8 * std::sin(z[0]), 0.5 * std::cos(z[1]) * std::cos(z[2]) * s,
        -0.5 * std::sin(z[1]) * std::sin(z[2]) * s, 0.0;
    return g;
  };
  GenericHamiltonianSystem K;
  K.dim = 4;
  K.value = [](double, const Vec& z) { return 0.6 * std::cos(z[3]) + 0.3 * std::sin(z[0] + z[2]); };
  K.grad = [](double, const Vec& z) {
    const double c = 0.3 * std::cos(z[0] + z[2]);
    Vec g(4);
    g << c, 0.0, c, -0.6 * std::sin(z[3]);
    return g;
  };
  return {H, K};
}

}  // namespace camel
