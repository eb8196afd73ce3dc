#pragma once

// Truncated phase space E_n of the periodic string equation.
//
// A state is U = sum_{|j|<=n} a_j phi_j^+ + b_j phi_j^-, with
//   phi_j^+ = lambda_j^{-1/2} (phi_j, 0),  phi_j^- = lambda_j^{-1/2} (0, -phi_j),
//   phi_j(x) = sqrt(2) sin(jx) for j > 0, 1 for j = 0, sqrt(2) cos(jx) for j < 0,
// which is an orthonormal basis of H^{1/2} x H^{1/2} under <f, g> = (1/2pi) int B f g.
// Coefficients are stored contiguously for j = -n ... n.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace camel {

/// Fourier mode label j (any integer; range checks happen where an order is known).
struct ModeIndex {
  int j = 0;
  constexpr ModeIndex() = default;
  constexpr explicit ModeIndex(int value) : j(value) {}
  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
};

class PhaseVector {
 public:
  /// Zero vector of order 0.
  PhaseVector();

  /// Validating constructor: both arrays must hold 2n+1 finite entries.
  PhaseVector(int order, std::vector<double> a, std::vector<double> b);

  static PhaseVector zero(int order);
  /// phi_j^+ (plus = true) or phi_j^- embedded in E_order.
  static PhaseVector basis(int order, ModeIndex l, bool plus);
  /// Inverse of flat(): [a_{-n..n}, b_{-n..n}].
  static PhaseVector from_flat(int order, std::span<const double> flat);

  int order() const { return order_; }
  std::size_t size() const { return a_.size(); }

  double a(ModeIndex l) const { return a_[slot(l)]; }
  double b(ModeIndex l) const { return b_[slot(l)]; }
  std::span<const double> a() const { return a_; }
  std::span<const double> b() const { return b_; }

  /// Same vector seen in E_order (order >= this->order()).
  PhaseVector padded(int order) const;
  /// Pi_order of this vector, stored with the smaller order.
  PhaseVector truncated(int order) const;
  std::vector<double> flat() const;

  PhaseVector& operator+=(const PhaseVector& other);
  PhaseVector& operator-=(const PhaseVector& other);
  PhaseVector& operator*=(double s);

  friend PhaseVector operator+(PhaseVector lhs, const PhaseVector& rhs) { return lhs += rhs; }
  friend PhaseVector operator-(PhaseVector lhs, const PhaseVector& rhs) { return lhs -= rhs; }
  friend PhaseVector operator*(double s, PhaseVector v) { return v *= s; }
  friend PhaseVector operator*(PhaseVector v, double s) { return v *= s; }
  friend PhaseVector operator-(PhaseVector v) { return v *= -1.0; }
  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

 private:
  std::size_t slot(ModeIndex l) const;

  int order_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
};

PhaseVector make_state(int order, std::vector<double> a, std::vector<double> b);

/// E-norm; the basis is orthonormal so this is the Euclidean norm of (a, b).
double e_norm(const PhaseVector& u);
double e_inner(const PhaseVector& u, const PhaseVector& w);

/// Diagnostic weaker norm on H^{1/2-theta} x H^{1/2-theta}, theta in (0, 1/2).
double f_theta_norm(const PhaseVector& u, double theta);

/// omega(xi, eta) = sum_j a_j(xi) b_j(eta) - b_j(xi) a_j(eta); mixed orders are zero-padded.
double symplectic_form(const PhaseVector& xi, const PhaseVector& eta);

/// Coordinate projections Pi_k, Pi_+^k, Pi_-^k and the tail projection Pi^n.
struct Region {
  enum class Kind { Low, Plus, Minus, Tail };
  Kind kind = Kind::Low;
  int k = 0;

  static constexpr Region low(int k) { return {Kind::Low, k}; }
  static constexpr Region plus(int k) { return {Kind::Plus, k}; }
  static constexpr Region minus(int k) { return {Kind::Minus, k}; }
  static constexpr Region tail(int n) { return {Kind::Tail, n}; }
};

PhaseVector project(const PhaseVector& u, Region region);

/// |U_l| = |a_l - i b_l|.
double mode_amplitude(const PhaseVector& u, ModeIndex l);

/// Samples of (u(x), v(x)) at x_i = 2 pi i / m.
struct GridFunction {
  std::vector<double> u;
  std::vector<double> v;
  std::size_t m() const { return u.size(); }
};

/// Smallest power of two m with m >= 4(n+1).
std::size_t min_grid_size(int order);
bool grid_size_ok(std::size_t m, int order);

GridFunction to_grid(const PhaseVector& u, std::size_t m);
PhaseVector from_grid(const GridFunction& g, int order);

/// PhaseVector CSV: "# order=n" followed by rows "j,a_j,b_j" with 17 significant digits.
std::string to_csv(const PhaseVector& u);
PhaseVector phase_vector_from_csv(std::string_view text);

}  // namespace camel
