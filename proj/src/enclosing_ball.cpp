#include "camel_lab/enclosing_ball.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <random>

#include "camel_lab/errors.hpp"

namespace camel {
namespace {

// Smallest ball with every support point on its boundary: the circumcenter
// c = p0 + sum_i x_i (p_i - p0) with 2 G x = diag(G), G the Gram matrix of p_i - p0.
Ball circumball(const std::vector<const Vec*>& support, Eigen::Index dim) {
  if (support.empty()) return {Vec::Zero(dim), -1.0};
  const Vec& p0 = *support.front();
  const auto m = static_cast<Eigen::Index>(support.size()) - 1;
  if (m == 0) return {p0, 0.0};
  Mat D(dim, m);
  for (Eigen::Index i = 0; i < m; ++i) D.col(i) = *support[i + 1] - p0;
  const Mat G = D.transpose() * D;
  const Vec rhs = 0.5 * G.diagonal();
  const Vec x = G.completeOrthogonalDecomposition().solve(rhs);
  const Vec offset = D * x;
  return {p0 + offset, offset.norm()};
}

bool inside(const Ball& b, const Vec& p) {
  if (b.radius < 0.0) return false;
  const double slack = 1e-12 * (1.0 + b.radius);
  return (p - b.center).norm() <= b.radius + slack;
}

Ball mtf(std::list<const Vec*>& pts, std::list<const Vec*>::iterator end,
         std::vector<const Vec*>& support, Eigen::Index dim) {
  Ball ball = circumball(support, dim);
  if (static_cast<Eigen::Index>(support.size()) == dim + 1) return ball;
  for (auto it = pts.begin(); it != end;) {
    auto current = it++;
    if (!inside(ball, **current)) {
      support.push_back(*current);
      ball = mtf(pts, current, support, dim);
      support.pop_back();
      pts.splice(pts.begin(), pts, current);
    }
  }
  return ball;
}

}  // namespace

Ball min_enclosing_ball(const std::vector<Vec>& points) {
  if (points.empty()) throw ValidationError("min_enclosing_ball: empty point set");
  const Eigen::Index dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim || !p.allFinite()) {
      throw ValidationError("min_enclosing_ball: points must be finite and share one dimension");
    }
  }
  // Fixed shuffle: deterministic output, expected linear time.
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), std::mt19937_64(0x5eb1));
  std::list<const Vec*> pts;
  for (std::size_t i : idx) pts.push_back(&points[i]);
  std::vector<const Vec*> support;
  Ball ball = mtf(pts, pts.end(), support, dim);
  for (const auto& p : points) ball.radius = std::max(ball.radius, (p - ball.center).norm());
  return ball;
}

}  // namespace camel
