#pragma once

// Closed-form values of a normalized symplectic capacity c and of the
// displacement-energy capacity gamma on model sets.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace camel {

struct CapacityShape {
  enum class Kind { Ball, Cylinder, Polydisk, Torus, Coisotropic };

  Kind kind = Kind::Ball;
  std::vector<double> radii;
  int n = 1;  ///< ambient complex dimension
  int k = 0;  ///< complex factor of a coisotropic subspace C^k x R^{n-k}

  static CapacityShape ball(double r, int n);
  /// B^2(r) x C^{n-1}.
  static CapacityShape cylinder(double r, int n);
  static CapacityShape polydisk(std::vector<double> radii);
  /// S^1(r)^m with equal radii.
  static CapacityShape torus(double r, int m);
  static CapacityShape coisotropic(int k, int n);

  /// Image under z -> lambda z.
  CapacityShape scaled(double lambda) const;
  std::string name() const;
  void validate() const;
};

struct CapacityOracleEntry {
  CapacityShape shape;
  double c_value = 0.0;
  double gamma_value = 0.0;
  std::string note;
};

CapacityOracleEntry capacity_oracle(const CapacityShape& shape);

/// Shape from CLI-style parameters: ball/cylinder (r, n), polydisk (radii),
/// torus (r, m = n), coisotropic (k, n).
CapacityShape capacity_shape_from_name(const std::string& name, double r, int n, int k,
                                       const std::vector<double>& radii);

/// Reference table covering every supported kind.
std::vector<CapacityOracleEntry> capacity_table();

struct OracleConsistency {
  std::size_t entries = 0;
  std::size_t order_violations = 0;    ///< c > gamma
  std::size_t scaling_violations = 0;  ///< value(lambda X) != lambda^2 value(X)
  std::size_t coisotropic_nonzero = 0;
  bool passed() const { return order_violations == 0 && scaling_violations == 0 && coisotropic_nonzero == 0; }
};

/// c <= gamma on every entry, lambda^2 scaling for each lambda (to 4 ulp), and zero coisotropic values.
OracleConsistency check_capacity_table(const std::vector<CapacityOracleEntry>& table,
                                       const std::vector<double>& lambdas);

}  // namespace camel
