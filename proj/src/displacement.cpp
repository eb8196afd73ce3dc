#include "camel_lab/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "camel_lab/errors.hpp"
#include "camel_lab/hamiltonian.hpp"

namespace camel {

DisplacementProfile DisplacementProfile::arctan() {
  return {[](double q) { return std::atan(q) / std::numbers::pi + 0.5; },
          [](double q) { return 1.0 / (std::numbers::pi * (1.0 + q * q)); }, 1.0};
}

DisplacementReport displacement_demo(const DisplacementProfile& profile, std::size_t samples,
                                     std::uint64_t seed, double t, double q_range) {
  if (!profile.f || !profile.fprime) throw ValidationError("displacement_demo: profile is incomplete");
  if (!(q_range > 0.0)) throw ValidationError("displacement_demo: q_range must be > 0");
  for (int i = 0; i <= 2000; ++i) {
    const double q = -q_range + 2.0 * q_range * i / 2000.0;
    if (!(profile.fprime(q) > 0.0)) throw ValidationError("displacement_demo: f' must be > 0");
    const double fq = profile.f(q);
    if (!(fq > 0.0 && fq < 1.0) || fq > profile.sup_f) throw ValidationError("displacement_demo: f must map into (0, sup_f]");
  }

  // H(q, p) = -2 f(q): dq/dt = 0, dp/dt = 2 f'(q).
  GenericHamiltonianSystem H;
  H.dim = 2;
  H.grad = [&profile](double, const Vec& z) {
    Vec g(2);
    g << -2.0 * profile.fprime(z[0]), 0.0;
    return g;
  };

  DisplacementReport rep;
  rep.samples = samples;
  rep.energy_bound = 2.0 * profile.sup_f;
  rep.min_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> qdist(-q_range, q_range), unit(-1.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double q = qdist(rng);
    const double fp = profile.fprime(q);
    const double p = fp * unit(rng);
    const double image = p + 2.0 * t * fp;
    const double margin = std::abs(image) - fp;
    rep.min_margin = std::min(rep.min_margin, margin);
    if (!(margin > 0.0)) ++rep.violations;
    if (i % 1000 == 0) {
      Vec z(2);
      z << q, p;
      const Vec w = flow_generic(z, 0.0, t, 0.1, H);
      rep.flow_check_error = std::max(rep.flow_check_error, std::hypot(w[0] - q, w[1] - image));
    }
  }
  return rep;
}

}  // namespace camel
