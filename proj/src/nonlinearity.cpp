#include "camel_lab/nonlinearity.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <random>

#include "camel_lab/errors.hpp"
#include "camel_lab/linear_ops.hpp"
#include "camel_lab/spectral.hpp"

namespace camel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 20-point Gauss-Legendre in u for potentials not given in closed form.
double potential_by_quadrature(const PointFn& f, double t, double x, double u) {
  static const gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(20);
  double acc = 0.0;
  for (std::size_t i = 0; i < table->n; ++i) {
    double node = 0.0, weight = 0.0;
    gsl_integration_glfixed_point(0.0, u, i, &node, &weight, table);
    acc += weight * f(t, x, node);
  }
  return acc;
}

void require_grid(std::size_t m, int order, const char* who) {
  if (!grid_size_ok(m, order)) {
    throw ValidationError(std::string(who) + ": grid size " + std::to_string(m) +
                          " must be a power of two >= 4(n+1) = " + std::to_string(4 * (order + 1)));
  }
}

}  // namespace

std::string NonlinearitySpec::name() const {
  switch (family) {
    case Family::SineGordon: return "sine-gordon";
    case Family::Zero: return "zero";
    case Family::CustomBounded: return "custom";
  }
  return "custom";
}

NonlinearitySpec NonlinearitySpec::sine_gordon() {
  NonlinearitySpec s;
  s.family = Family::SineGordon;
  s.f = [](double, double, double u) { return std::sin(u); };
  s.F = [](double, double, double u) { return 1.0 - std::cos(u); };
  s.C0 = 1.0;
  return s;
}

NonlinearitySpec NonlinearitySpec::zero() {
  NonlinearitySpec s;
  s.family = Family::Zero;
  s.f = [](double, double, double) { return 0.0; };
  s.F = [](double, double, double) { return 0.0; };
  s.C0 = 0.0;
  return s;
}

NonlinearitySpec NonlinearitySpec::custom_bounded(PointFn f, double C0, PointFn F) {
  if (!f) throw ValidationError("custom nonlinearity: f is empty");
  if (!(C0 >= 0.0) || !std::isfinite(C0)) throw ValidationError("custom nonlinearity: C0 must be finite and >= 0");
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> tdist(-10.0, 10.0), xdist(0.0, kTwoPi), udist(-50.0, 50.0);
  for (int i = 0; i < 4096; ++i) {
    const double t = tdist(rng), x = xdist(rng), u = udist(rng);
    const double v = f(t, x, u);
    if (!std::isfinite(v) || std::abs(v) > C0 * (1.0 + 1e-12)) {
      throw ValidationError("custom nonlinearity: |f(" + std::to_string(t) + ", " + std::to_string(x) +
                            ", " + std::to_string(u) + ")| = " + std::to_string(std::abs(v)) +
                            " exceeds declared C0 = " + std::to_string(C0));
    }
  }
  NonlinearitySpec s;
  s.family = Family::CustomBounded;
  s.f = std::move(f);
  s.F = std::move(F);
  s.C0 = C0;
  return s;
}

NonlinearitySpec NonlinearitySpec::by_name(std::string_view name) {
  if (name == "sine-gordon") return sine_gordon();
  if (name == "zero") return zero();
  throw ValidationError("unknown nonlinearity '" + std::string(name) + "' (expected sine-gordon or zero)");
}

PhaseVector grad_h(const NonlinearitySpec& spec, double t, const PhaseVector& u, std::size_t m) {
  const int n = u.order();
  require_grid(m, n, "grad_h");
  if (spec.family == NonlinearitySpec::Family::Zero) return PhaseVector::zero(n);

  auto grid = to_grid(u, m);
  std::vector<double> samples(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    samples[i] = spec.f(t, x, grid.u[i]);
  }
  // from_grid on the u-component followed by B^{-1}: lambda^{1/2} * lambda^{-1} = lambda^{-1/2}.
  auto c = spectral::analyze(samples, n);
  for (int j = -n; j <= n; ++j) c[j + n] /= std::sqrt(lambda(ModeIndex{j}));
  return PhaseVector(n, std::move(c), std::vector<double>(2 * n + 1, 0.0));
}

PhaseVector grad_h_trunc(const NonlinearitySpec& spec, double t, const PhaseVector& u, int n,
                         std::size_t m) {
  if (n < 0 || n > u.order()) {
    throw ValidationError("grad_h_trunc: n = " + std::to_string(n) + " outside [0, " +
                          std::to_string(u.order()) + "]");
  }
  require_grid(m, n, "grad_h_trunc");
  // Pi_n u as an order-n vector, so the grid only has to resolve n.
  return grad_h(spec, t, u.truncated(n), m).padded(u.order());
}

PotentialValue h_value(const NonlinearitySpec& spec, double t, const PhaseVector& u,
                       std::size_t m) {
  require_grid(m, u.order(), "h_value");
  if (spec.family == NonlinearitySpec::Family::Zero) return {0.0};
  auto grid = to_grid(u, m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    acc += spec.F ? spec.F(t, x, grid.u[i]) : potential_by_quadrature(spec.f, t, x, grid.u[i]);
  }
  return {acc / static_cast<double>(m)};
}

}  // namespace camel
