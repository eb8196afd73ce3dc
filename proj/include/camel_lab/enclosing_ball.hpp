#pragma once

// Smallest enclosing ball of a finite point set in R^d (move-to-front Welzl).

#include <vector>

#include "camel_lab/hamiltonian.hpp"

namespace camel {

struct Ball {
  Vec center;
  double radius = 0.0;
};

/// Throws ValidationError on empty input or mixed dimensions.
Ball min_enclosing_ball(const std::vector<Vec>& points);

}  // namespace camel
