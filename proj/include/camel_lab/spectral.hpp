#pragma once

// Real trigonometric transforms between the orthonormal family
// {phi_j : |j| <= n} (see phase_space.hpp) and equispaced samples on [0, 2pi).

#include <cstddef>
#include <span>
#include <vector>

namespace camel::spectral {

/// f(x_i) = sum_{|j|<=n} c_j phi_j(x_i); c has 2n+1 entries (j = -n..n), m >= 2n+2.
std::vector<double> synthesize(std::span<const double> c, std::size_t m);

/// Discrete projection onto phi_j, |j| <= n: c_j = (1/m) sum_i f(x_i) phi_j(x_i).
/// Exact inverse of synthesize() when n < m/2.
std::vector<double> analyze(std::span<const double> samples, int n);

/// phi_j(x) evaluated directly (no transform).
double basis_function(int j, double x);

}  // namespace camel::spectral
