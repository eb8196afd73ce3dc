#pragma once

// Coisotropic cylinders X x R^{n-k} in C^n = R^{2n} (interleaved q, p), camel
// points of a map psi: points z of the cylinder with psi(z) in C^k x iR^{n-k},
// their reduction to C^k, and the a-priori bound on their size.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "camel_lab/hamiltonian.hpp"

namespace camel {

/// Compact base X in C^k, coordinates (q_1, p_1, ..., q_k, p_k).
struct BaseShape {
  enum class Kind { Ball, Polydisk, Torus, PointCloud };

  Kind kind = Kind::Ball;
  std::vector<double> radii;  ///< one radius (ball) or one per factor (polydisk, torus)
  std::vector<Vec> cloud;

  static BaseShape ball(double r);
  static BaseShape polydisk(std::vector<double> radii);
  /// Product of circles S^1(r_1) x ... x S^1(r_k).
  static BaseShape torus(std::vector<double> radii);
  static BaseShape points(std::vector<Vec> cloud);
  static BaseShape from_name(const std::string& name, std::vector<double> radii);

  std::string name() const;
  /// Throws ValidationError unless the shape is well formed for complex dimension k.
  void validate(int k) const;
  bool contains(const Vec& base, double tol = 1e-12) const;
  Vec sample(std::mt19937_64& rng, int k) const;
};

struct CoisotropicCylinder {
  int k = 1;
  int n = 2;
  BaseShape base = BaseShape::ball(1.0);
  double L = 1.0;  ///< fiber sampling box [-L, L]

  void validate() const;
  /// Base membership, p_{k+1..n} = 0; q_{k+1..n} is unrestricted.
  bool contains(const Vec& z, double tol = 1e-12) const;
};

/// Base point in X, q_{k+1..n} uniform in [-L, L], p_{k+1..n} = 0.
std::vector<Vec> sample_cylinder(const CoisotropicCylinder& cyl, std::size_t count, std::uint64_t seed);

/// |(q_{k+1}, ..., q_n)| of a point of R^{2n}.
double fiber_residual(const Vec& image, int k);

struct CamelSearchOptions {
  int starts = 64;
  double tol = 1e-8;
  int max_iterations = 100;
  std::uint64_t seed = 1;
};

struct CamelPointSet {
  double t = 0.0;
  int k = 0;
  std::vector<Vec> points;     ///< camel points z, sorted lexicographically
  std::vector<Vec> images;     ///< psi_t(z)
  std::vector<double> residuals;
  int starts = 0;
};

/// Multistart quasi-Newton (GSL hybrids) on the fiber coordinates q_{k+1..n}
/// with the base point fixed per start; keeps roots with residual <= tol.
CamelPointSet find_camel_points(const MapFn& psi, const CoisotropicCylinder& cyl, double t,
                                const CamelSearchOptions& opts = {});

/// Pi_k psi_t(z): the first 2k coordinates of each image.
std::vector<Vec> reduce_points(const CamelPointSet& set, int k);

struct CamelBoundReport {
  double r = 0.0;
  double A = 0.0;
  double B = 0.0;
  double t = 0.0;
  double bound = 0.0;       ///< (r + A/B) / (2 - e^{Bt})
  double time_limit = 0.0;  ///< ln 2 / (3B)
  bool in_regime = false;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t envelope_violations = 0;
  double max_norm = 0.0;
  std::optional<Vec> offending;
  bool passed() const { return violations == 0 && envelope_violations == 0; }
};

/// Camel bound (r + A/B)/(2 - e^{Bt}) for a ball base of radius r.
double camel_bound(double r, double A, double B, double t);

/// Checks every camel point against camel_bound * (1 + tol) and the growth envelopes
/// |psi_s(z)| <= e^{Bs}|z| + (A/B)(e^{Bs} - 1), |psi_s(z) - z| <= (e^{Bs} - 1)(|z| + A/B)
/// along midpoint trajectories of sys with step dt.
CamelBoundReport camel_bound_check(const GenericHamiltonianSystem& sys, const CoisotropicCylinder& cyl,
                                   double t, const CamelPointSet& pts, double tol = 0.01,
                                   double dt = 1e-3);

/// Fiber box that contains every camel point allowed by the bound (with 25% margin).
double auto_fiber_box(const GrowthCertificate& cert, double r, double t);

struct SwapReport {
  int k = 0;
  int n = 0;
  std::size_t samples = 0;
  std::size_t outside_target = 0;  ///< images whose Pi_k has nonzero p on a real slot
  int target_free_complex = 0;     ///< the target is C^{free} x R^{k - free} inside C^k
  double target_capacity = 0.0;    ///< oracle value of the target
  double base_capacity = 0.0;      ///< oracle value of the base
  double symplectic_defect = 0.0;  ///< |P^T Omega P - Omega|
  bool involution_ok = false;
};

/// (z_1..z_n) -> (z_{k+1}, ..., z_n, z_1, ..., z_k) in interleaved coordinates.
Vec swap_map(const Vec& z, int k);

SwapReport swap_counterexample(const CoisotropicCylinder& cyl, std::size_t samples, std::uint64_t seed);

}  // namespace camel
