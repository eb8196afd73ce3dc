#pragma once

// Displacing V = {|p_n| < f'(q_n)} with the bounded Hamiltonian H = -2 f(q_n),
// whose time-t map is (q, p) -> (q, p_n + 2t f'(q_n)).

#include <cstdint>
#include <functional>

namespace camel {

struct DisplacementProfile {
  std::function<double(double)> f;       ///< increasing, values in (0, 1)
  std::function<double(double)> fprime;  ///< f' > 0
  double sup_f = 1.0;

  /// f = arctan(q)/pi + 1/2.
  static DisplacementProfile arctan();
};

struct DisplacementReport {
  std::size_t samples = 0;
  std::size_t violations = 0;  ///< images with |p_n + 2 f'(q_n)| <= f'(q_n)
  double min_margin = 0.0;     ///< min of |p_n'| - f'(q_n) over images
  double energy_bound = 0.0;   ///< sup |H| = 2 sup f
  double flow_check_error = 0.0;  ///< closed form vs integrated flow on a subsample
  bool passed() const { return violations == 0; }
};

/// Samples q_n uniform in [-q_range, q_range] and p_n uniform in (-f'(q_n), f'(q_n)).
/// Throws ValidationError when f' <= 0 on a probe.
DisplacementReport displacement_demo(const DisplacementProfile& profile, std::size_t samples,
                                     std::uint64_t seed, double t = 1.0, double q_range = 10.0);

}  // namespace camel
