#pragma once

// Finite-dimensional Hamiltonian systems on R^{2n} = C^n with coordinates
// z = (q_1, p_1, ..., q_n, p_n) and vector field X_H = J grad H,
// J grad H = (dH/dp_1, -dH/dq_1, ..., dH/dp_n, -dH/dq_n).

#include <Eigen/Dense>

#include <functional>
#include <optional>

namespace camel {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using GradientFn = std::function<Vec(double t, const Vec& z)>;
using ValueFn = std::function<double(double t, const Vec& z)>;
using MapFn = std::function<Vec(const Vec& z)>;

/// |grad H_t(z)| <= A + B |z|.
struct GrowthCertificate {
  double A = 0.0;
  double B = 0.0;
};

struct GenericHamiltonianSystem {
  int dim = 0;  ///< 2n
  GradientFn grad;
  ValueFn value;  ///< optional; needed by cutoff_hamiltonian
  std::optional<GrowthCertificate> certificate;

  Vec vector_field(double t, const Vec& z) const;

  /// Probes grad on seeded samples of the ball |z| <= radius and t in [-t_max, t_max]:
  /// finiteness, and the certificate when present. Throws ValidationError on failure.
  void validate(int probes = 1000, double radius = 10.0, double t_max = 1.0,
                unsigned long long seed = 1) const;
};

/// Standard complex structure in interleaved coordinates: (x_q, x_p) -> (x_p, -x_q).
Vec apply_standard_J(const Vec& v);
/// Matrix of omega(xi, eta) = sum q_xi p_eta - p_xi q_eta in interleaved coordinates.
Mat standard_omega(int dim);

struct MidpointOptions {
  double tol = 1e-14;  ///< relative fixed-point tolerance of the implicit stage
  int max_iterations = 200;
};

/// z' = z + dt J grad H((z + z')/2, t + dt/2).
Vec midpoint_step_generic(const Vec& z, double t, double dt, const GenericHamiltonianSystem& sys,
                          const MidpointOptions& opts = {});

/// Midpoint flow from t0 to t1 (either direction) with steps of size at most |dt|;
/// the last step is shortened to land on t1.
Vec flow_generic(const Vec& z, double t0, double t1, double dt, const GenericHamiltonianSystem& sys,
                 const MidpointOptions& opts = {});

/// Time-t0..t1 map of sys as a callable.
MapFn time_map(GenericHamiltonianSystem sys, double t0, double t1, double dt);

/// Central-difference Jacobian, column by column.
Mat jacobian_fd(const MapFn& map, const Vec& z, double h);

}  // namespace camel
