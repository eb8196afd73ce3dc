#include "camel_lab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "camel_lab/errors.hpp"

namespace camel {
namespace {

constexpr double kPi = std::numbers::pi;

bool same_to_ulps(double x, double y, int ulps) {
  if (x == y) return true;
  return std::abs(x - y) <= ulps * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), std::abs(y));
}

}  // namespace

CapacityShape CapacityShape::ball(double r, int n) { return {Kind::Ball, {r}, n, 0}; }
CapacityShape CapacityShape::cylinder(double r, int n) { return {Kind::Cylinder, {r}, n, 0}; }
CapacityShape CapacityShape::polydisk(std::vector<double> radii) {
  const int n = static_cast<int>(radii.size());
  return {Kind::Polydisk, std::move(radii), n, 0};
}
CapacityShape CapacityShape::torus(double r, int m) { return {Kind::Torus, {r}, m, 0}; }
CapacityShape CapacityShape::coisotropic(int k, int n) { return {Kind::Coisotropic, {}, n, k}; }

CapacityShape CapacityShape::scaled(double lambda) const {
  CapacityShape out = *this;
  for (auto& r : out.radii) r *= lambda;
  return out;
}

std::string CapacityShape::name() const {
  std::ostringstream s;
  s.precision(17);
  switch (kind) {
    case Kind::Ball: s << "ball(r=" << radii[0] << ",n=" << n << ")"; break;
    case Kind::Cylinder: s << "cylinder(r=" << radii[0] << ",n=" << n << ")"; break;
    case Kind::Polydisk:
      s << "polydisk(";
      for (std::size_t i = 0; i < radii.size(); ++i) s << (i ? "," : "") << radii[i];
      s << ")";
      break;
    case Kind::Torus: s << "torus(r=" << radii[0] << ",m=" << n << ")"; break;
    case Kind::Coisotropic: s << "coisotropic(k=" << k << ",n=" << n << ")"; break;
  }
  return s.str();
}

void CapacityShape::validate() const {
  if (n < 1) throw ValidationError("capacity shape: n must be >= 1");
  if (kind == Kind::Coisotropic) {
    if (k < 0 || k >= n) throw ValidationError("capacity shape: coisotropic subspace needs 0 <= k < n");
    return;
  }
  if (radii.empty()) throw ValidationError("capacity shape: radius missing");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("capacity shape: radii must be finite and > 0");
  }
}

CapacityOracleEntry capacity_oracle(const CapacityShape& shape) {
  shape.validate();
  CapacityOracleEntry e{shape, 0.0, 0.0, {}};
  switch (shape.kind) {
    case CapacityShape::Kind::Ball: {
      const double r = shape.radii[0];
      e.c_value = e.gamma_value = kPi * r * r;
      e.note = "normalization on the ball";
      break;
    }
    case CapacityShape::Kind::Cylinder: {
      const double r = shape.radii[0];
      e.c_value = e.gamma_value = kPi * r * r;
      e.note = "normalization on the symplectic cylinder";
      break;
    }
    case CapacityShape::Kind::Polydisk: {
      const double r = *std::min_element(shape.radii.begin(), shape.radii.end());
      e.c_value = e.gamma_value = kPi * r * r;
      e.note = "monotonicity: B(r_min) inside P inside B^2(r_min) x C^{n-1}";
      break;
    }
    case CapacityShape::Kind::Torus: {
      const double r = shape.radii[0];
      e.c_value = e.gamma_value = kPi * r * r;
      e.note = "product of equal circles";
      break;
    }
    case CapacityShape::Kind::Coisotropic:
      e.c_value = e.gamma_value = 0.0;
      e.note = "displaceable by the flow of a bounded Hamiltonian";
      break;
  }
  return e;
}

CapacityShape capacity_shape_from_name(const std::string& name, double r, int n, int k,
                                       const std::vector<double>& radii) {
  CapacityShape s;
  if (name == "ball") s = CapacityShape::ball(r, n);
  else if (name == "cylinder") s = CapacityShape::cylinder(r, n);
  else if (name == "polydisk") s = CapacityShape::polydisk(radii.empty() ? std::vector<double>(n, r) : radii);
  else if (name == "torus") s = CapacityShape::torus(r, n);
  else if (name == "coisotropic") s = CapacityShape::coisotropic(k, n);
  else throw ValidationError("unknown shape '" + name + "' (expected ball, cylinder, polydisk, torus or coisotropic)");
  s.validate();
  return s;
}

std::vector<CapacityOracleEntry> capacity_table() {
  std::vector<CapacityShape> shapes{
      CapacityShape::ball(1.0, 1),        CapacityShape::ball(1.0, 3),
      CapacityShape::ball(0.7, 2),        CapacityShape::cylinder(1.0, 2),
      CapacityShape::cylinder(2.5, 4),    CapacityShape::polydisk({1.0, 2.0}),
      CapacityShape::polydisk({3.0, 0.5, 1.0}), CapacityShape::torus(1.0, 2),
      CapacityShape::torus(0.3, 5),       CapacityShape::coisotropic(0, 1),
      CapacityShape::coisotropic(1, 2),   CapacityShape::coisotropic(2, 5)};
  std::vector<CapacityOracleEntry> table;
  for (const auto& s : shapes) table.push_back(capacity_oracle(s));
  return table;
}

OracleConsistency check_capacity_table(const std::vector<CapacityOracleEntry>& table,
                                       const std::vector<double>& lambdas) {
  OracleConsistency out;
  out.entries = table.size();
  for (const auto& e : table) {
    if (e.c_value > e.gamma_value) ++out.order_violations;
    if (e.shape.kind == CapacityShape::Kind::Coisotropic && (e.c_value != 0.0 || e.gamma_value != 0.0)) {
      ++out.coisotropic_nonzero;
    }
    for (double lambda : lambdas) {
      const auto scaled = capacity_oracle(e.shape.scaled(lambda));
      const double l2 = lambda * lambda;
      if (!same_to_ulps(scaled.c_value, l2 * e.c_value, 4) ||
          !same_to_ulps(scaled.gamma_value, l2 * e.gamma_value, 4)) {
        ++out.scaling_violations;
      }
    }
  }
  return out;
}

}  // namespace camel
