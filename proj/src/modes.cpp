#include "camel_lab/modes.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "camel_lab/errors.hpp"
#include "camel_lab/parallel.hpp"

namespace camel {
namespace {

// Parameter vector: (a_j, b_j) for each base mode, then a_j for every other |j| <= n.
class Parametrization {
 public:
  Parametrization(const ModeBase& X, int order, double box) : base_(X.modes), order_(order), radius_(X.radius), box_(box) {
    std::set<int> seen;
    for (int j : base_) {
      if (std::abs(j) > order) throw ValidationError("maximize_mode: base mode outside the truncation");
      if (!seen.insert(j).second) throw ValidationError("maximize_mode: repeated base mode");
    }
    for (int j = -order; j <= order; ++j) {
      if (!seen.count(j)) free_.push_back(j);
    }
  }

  std::size_t size() const { return 2 * base_.size() + free_.size(); }
  std::size_t base_size() const { return 2 * base_.size(); }

  void project(std::vector<double>& x) const {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < base_size(); ++i) norm2 += x[i] * x[i];
    if (norm2 > radius_ * radius_) {
      const double s = radius_ / std::sqrt(norm2);
      for (std::size_t i = 0; i < base_size(); ++i) x[i] *= s;
    }
    for (std::size_t i = base_size(); i < size(); ++i) x[i] = std::clamp(x[i], -box_, box_);
  }

  PhaseVector state(const std::vector<double>& x) const {
    std::vector<double> a(2 * order_ + 1, 0.0), b(2 * order_ + 1, 0.0);
    for (std::size_t i = 0; i < base_.size(); ++i) {
      a[base_[i] + order_] = x[2 * i];
      b[base_[i] + order_] = x[2 * i + 1];
    }
    for (std::size_t i = 0; i < free_.size(); ++i) a[free_[i] + order_] = x[base_size() + i];
    return PhaseVector(order_, std::move(a), std::move(b));
  }

  std::vector<double> random_point(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0), boxd(-box_, box_);
    std::vector<double> x(size());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < base_size(); ++i) norm2 += (x[i] = gauss(rng)) * x[i];
    const double s = radius_ * std::pow(unit(rng), 1.0 / static_cast<double>(std::max<std::size_t>(base_size(), 1))) /
                     std::max(std::sqrt(norm2), 1e-300);
    for (std::size_t i = 0; i < base_size(); ++i) x[i] *= s;
    for (std::size_t i = base_size(); i < size(); ++i) x[i] = boxd(rng);
    return x;
  }

  /// Base point (a_l, b_l) = r * dir, zero elsewhere; falls back to the first base mode.
  std::vector<double> aligned_point(int l, double dir_a, double dir_b) const {
    std::vector<double> x(size(), 0.0);
    if (base_.empty()) return x;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < base_.size(); ++i) {
      if (base_[i] == l) slot = i;
    }
    const double norm = std::hypot(dir_a, dir_b);
    x[2 * slot] = radius_ * dir_a / norm;
    x[2 * slot + 1] = radius_ * dir_b / norm;
    return x;
  }

  double scale() const { return std::max(radius_, box_); }

 private:
  std::vector<int> base_;
  std::vector<int> free_;
  int order_;
  double radius_;
  double box_;
};

struct Objective {
  const Parametrization* param;
  std::function<double(const PhaseVector&)> score;  // of the final state
  const NonlinearitySpec* spec;
  FlowConfig window;
  long evaluations = 0;

  double operator()(std::vector<double> x) {
    param->project(x);
    ++evaluations;
    return score(flow_final(param->state(x), window, *spec));
  }
};

double nm_adapter(const gsl_vector* v, void* params) {
  auto* obj = static_cast<Objective*>(params);
  std::vector<double> x(v->data, v->data + v->size);
  return -(*obj)(std::move(x));
}

// Coordinate search with step halving, then a Nelder-Mead polish; returns the projected optimum.
std::vector<double> local_search(Objective& obj, std::vector<double> x, const ModeSearchOptions& opts,
                                 double& best) {
  obj.param->project(x);
  best = obj(x);
  double step = 0.25 * obj.param->scale();
  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    for (int pass = 0; pass < 2; ++pass) {
      bool improved = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sign : {1.0, -1.0}) {
          auto y = x;
          y[i] += sign * step;
          obj.param->project(y);
          const double v = obj(y);
          if (v > best) {
            best = v;
            x = std::move(y);
            improved = true;
            break;
          }
        }
      }
      if (!improved) break;
    }
    step *= 0.5;
  }

  if (opts.polish_iterations > 0) {
    const std::size_t dim = x.size();
    gsl_multimin_function fn{&nm_adapter, dim, &obj};
    gsl_vector* start = gsl_vector_alloc(dim);
    gsl_vector* steps = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(start, i, x[i]);
    gsl_vector_set_all(steps, 2.0 * step);
    gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_multimin_fminimizer_set(nm, &fn, start, steps);
    for (int it = 0; it < opts.polish_iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), 1e-7) == GSL_SUCCESS) break;
    }
    gsl_set_error_handler(old);
    std::vector<double> polished(nm->x->data, nm->x->data + dim);
    obj.param->project(polished);
    const double v = -nm->fval;
    if (v > best) {
      best = v;
      x = std::move(polished);
    }
    gsl_multimin_fminimizer_free(nm);
    gsl_vector_free(steps);
    gsl_vector_free(start);
  }
  return x;
}

void check_inputs(int l, const ModeBase& X, double t0, const FlowConfig& cfg, const ModeSearchOptions& opts) {
  cfg.validate();
  if (std::abs(l) > cfg.n) throw ValidationError("maximize_mode: |l| must be <= n");
  if (!(X.radius > 0.0)) throw ValidationError("maximize_mode: base radius must be > 0");
  if (!(t0 >= 0.0)) throw ValidationError("maximize_mode: t0 must be >= 0");
  if (!(opts.box >= 0.0)) throw ValidationError("maximize_mode: box must be >= 0");
  if (opts.starts < 1) throw ValidationError("maximize_mode: at least one start is required");
}

FlowConfig window_of(const FlowConfig& cfg, double t0) {
  FlowConfig w = cfg;
  w.t1 = cfg.t0 + t0;
  return w;
}

}  // namespace

ModeBase ModeBase::disk(int l, double r) { return {{l}, r}; }

ModeBase ModeBase::low(int k, double r) {
  ModeBase b{{}, r};
  for (int j = -k; j <= k; ++j) b.modes.push_back(j);
  return b;
}

ModeWitness maximize_mode(const NonlinearitySpec& spec, int l, const ModeBase& X, double t0,
                          const FlowConfig& cfg, const ModeSearchOptions& opts) {
  check_inputs(l, X, t0, cfg, opts);
  const Parametrization param(X, cfg.n, opts.box);
  const FlowConfig window = window_of(cfg, t0);
  auto score = [l](const PhaseVector& u) { return mode_amplitude(u, ModeIndex{l}); };

  std::vector<ModeWitness> results(static_cast<std::size_t>(opts.starts));
  parallel_for(results.size(), [&](std::size_t s) {
    Objective obj{&param, score, &spec, window};
    std::mt19937_64 rng(task_seed(opts.seed, s));
    auto x0 = s == 0 ? param.aligned_point(l, 1.0, 0.0) : param.random_point(rng);
    double best = 0.0;
    const auto x = local_search(obj, std::move(x0), opts, best);
    const auto init = param.state(x);
    results[s] = {init, flow_final(init, window, spec), best, obj.evaluations};
  });
  ModeWitness out = results.front();
  long evals = 0;
  for (const auto& r : results) {
    evals += r.evaluations;
    if (r.value > out.value) out = r;
  }
  out.evaluations = evals;
  return out;
}

ModeWitness maximize_mode_direction(const NonlinearitySpec& spec, int l, const ModeBase& X,
                                    double t0, const FlowConfig& cfg, double theta,
                                    const ModeSearchOptions& opts) {
  check_inputs(l, X, t0, cfg, opts);
  const Parametrization param(X, cfg.n, opts.box);
  const FlowConfig window = window_of(cfg, t0);
  const double c = std::cos(theta), s = std::sin(theta);
  auto score = [l, c, s](const PhaseVector& u) { return c * u.a(ModeIndex{l}) + s * u.b(ModeIndex{l}); };
  // The linear block M maximises <M x, e> over |x| = r at x = r M^T e / |M^T e|.
  const auto M = exp_block(ModeIndex{l}, t0);
  Objective obj{&param, score, &spec, window};
  double best = 0.0;
  const auto x = local_search(obj, param.aligned_point(l, M.m11 * c + M.m21 * s, M.m12 * c + M.m22 * s), opts, best);
  const auto init = param.state(x);
  return {init, flow_final(init, window, spec), best, obj.evaluations};
}

WitnessCloud mode_witness_cloud(const NonlinearitySpec& spec, int l, const ModeBase& X, double t0,
                                const FlowConfig& cfg, int directions, const ModeSearchOptions& opts) {
  if (directions < 1) throw ValidationError("mode_witness_cloud: directions must be >= 1");
  std::vector<Vec> images(static_cast<std::size_t>(directions));
  parallel_for(images.size(), [&](std::size_t i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / directions;
    const auto w = maximize_mode_direction(spec, l, X, t0, cfg, theta, opts);
    Vec p(2);
    p << w.final_state.a(ModeIndex{l}), w.final_state.b(ModeIndex{l});
    images[i] = p;
  });
  WitnessCloud cloud;
  const auto best = maximize_mode(spec, l, X, t0, cfg, opts);
  cloud.best_modulus = best.value;
  Vec p(2);
  p << best.final_state.a(ModeIndex{l}), best.final_state.b(ModeIndex{l});
  images.push_back(p);
  cloud.points = std::move(images);
  cloud.ball = min_enclosing_ball(cloud.points);
  return cloud;
}

}  // namespace camel
