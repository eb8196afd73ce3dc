#pragma once

// Shared generators and independent oracles for the test suites. Nothing here
// calls the transform or integrator code paths it is used to check.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "camel_lab/phase_space.hpp"

namespace camel::testing {

inline constexpr double kPi = std::numbers::pi;

/// Random PhaseVector of the given order with coefficients ~ N(0,1) * lambda_j^{-decay},
/// rescaled to E-norm `radius`.
inline PhaseVector random_state(std::mt19937_64& rng, int order, double radius, double decay = 1.0) {
  std::normal_distribution<double> g;
  std::vector<double> a(2 * order + 1), b(2 * order + 1);
  double norm2 = 0.0;
  for (int j = -order; j <= order; ++j) {
    const double w = std::pow(std::sqrt(double(j) * j + 1.0), -decay);
    a[j + order] = w * g(rng);
    b[j + order] = w * g(rng);
    norm2 += a[j + order] * a[j + order] + b[j + order] * b[j + order];
  }
  const double s = radius / std::sqrt(norm2);
  for (auto& x : a) x *= s;
  for (auto& x : b) x *= s;
  return PhaseVector(order, std::move(a), std::move(b));
}

/// Uniform coefficients in [-1, 1].
inline PhaseVector uniform_state(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> a(2 * order + 1), b(2 * order + 1);
  for (auto& x : a) x = d(rng);
  for (auto& x : b) x = d(rng);
  return PhaseVector(order, std::move(a), std::move(b));
}

/// phi_j(x), written out independently of the library.
inline double phi(int j, double x) {
  if (j > 0) return std::sqrt(2.0) * std::sin(j * x);
  if (j < 0) return std::sqrt(2.0) * std::cos(-j * x);
  return 1.0;
}

inline double lam(int j) { return std::sqrt(double(j) * j + 1.0); }

/// u(x) = sum a_j lambda_j^{-1/2} phi_j(x) by direct summation.
inline double u_at(const PhaseVector& s, double x) {
  double acc = 0.0;
  for (int j = -s.order(); j <= s.order(); ++j) acc += s.a(ModeIndex{j}) / std::sqrt(lam(j)) * phi(j, x);
  return acc;
}

/// v(x) = -sum b_j lambda_j^{-1/2} phi_j(x) by direct summation.
inline double v_at(const PhaseVector& s, double x) {
  double acc = 0.0;
  for (int j = -s.order(); j <= s.order(); ++j) acc -= s.b(ModeIndex{j}) / std::sqrt(lam(j)) * phi(j, x);
  return acc;
}

inline double max_abs_diff(const PhaseVector& x, const PhaseVector& y) {
  const int n = std::max(x.order(), y.order());
  const PhaseVector px = x.padded(n), py = y.padded(n);
  double worst = 0.0;
  for (int j = -n; j <= n; ++j) {
    worst = std::max(worst, std::abs(px.a(ModeIndex{j}) - py.a(ModeIndex{j})));
    worst = std::max(worst, std::abs(px.b(ModeIndex{j}) - py.b(ModeIndex{j})));
  }
  return worst;
}

}  // namespace camel::testing
