#include "camel_lab/cylinder.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multiroots.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "camel_lab/capacity.hpp"
#include "camel_lab/errors.hpp"
#include "camel_lab/parallel.hpp"

namespace camel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec unit_disk_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = r * std::sqrt(unit(rng));
  const double phi = kTwoPi * unit(rng);
  Vec out(2);
  out << rho * std::cos(phi), rho * std::sin(phi);
  return out;
}

bool lex_less(const Vec& x, const Vec& y) {
  return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
}

struct RootProblem {
  const MapFn* psi;
  const Vec* base_point;  // full z with the fiber q entries overwritten per evaluation
  int k;
  int n;
};

int fiber_equations(const gsl_vector* x, void* params, gsl_vector* f) {
  const auto* prob = static_cast<const RootProblem*>(params);
  Vec z = *prob->base_point;
  for (int i = 0; i < prob->n - prob->k; ++i) z[2 * (prob->k + i)] = gsl_vector_get(x, i);
  const Vec image = (*prob->psi)(z);
  for (int i = 0; i < prob->n - prob->k; ++i) {
    const double v = image[2 * (prob->k + i)];
    if (!std::isfinite(v)) return GSL_EBADFUNC;
    gsl_vector_set(f, i, v);
  }
  return GSL_SUCCESS;
}

}  // namespace

BaseShape BaseShape::ball(double r) { return {Kind::Ball, {r}, {}}; }
BaseShape BaseShape::polydisk(std::vector<double> radii) { return {Kind::Polydisk, std::move(radii), {}}; }
BaseShape BaseShape::torus(std::vector<double> radii) { return {Kind::Torus, std::move(radii), {}}; }
BaseShape BaseShape::points(std::vector<Vec> cloud) { return {Kind::PointCloud, {}, std::move(cloud)}; }

BaseShape BaseShape::from_name(const std::string& name, std::vector<double> radii) {
  if (name == "ball") {
    if (radii.size() != 1) throw ValidationError("ball base takes one radius");
    return ball(radii[0]);
  }
  if (name == "polydisk") return polydisk(std::move(radii));
  if (name == "torus") return torus(std::move(radii));
  throw ValidationError("unknown base shape '" + name + "' (expected ball, polydisk or torus)");
}

std::string BaseShape::name() const {
  switch (kind) {
    case Kind::Ball: return "ball";
    case Kind::Polydisk: return "polydisk";
    case Kind::Torus: return "torus";
    case Kind::PointCloud: return "points";
  }
  return "ball";
}

void BaseShape::validate(int k) const {
  if (kind == Kind::PointCloud) {
    if (cloud.empty()) throw ValidationError("point-cloud base is empty");
    for (const auto& p : cloud) {
      if (p.size() != 2 * k || !p.allFinite()) throw ValidationError("point-cloud base: points must be finite and in R^{2k}");
    }
    return;
  }
  const std::size_t expected = kind == Kind::Ball ? 1 : static_cast<std::size_t>(k);
  if (radii.size() != expected) {
    throw ValidationError(name() + " base needs " + std::to_string(expected) + " radii");
  }
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("base radii must be finite and > 0");
  }
}

bool BaseShape::contains(const Vec& base, double tol) const {
  switch (kind) {
    case Kind::Ball: return base.norm() <= radii[0] * (1.0 + tol);
    case Kind::Polydisk:
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (std::hypot(base[2 * i], base[2 * i + 1]) > radii[i] * (1.0 + tol)) return false;
      }
      return true;
    case Kind::Torus:
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (std::abs(std::hypot(base[2 * i], base[2 * i + 1]) - radii[i]) > radii[i] * tol) return false;
      }
      return true;
    case Kind::PointCloud:
      return std::any_of(cloud.begin(), cloud.end(),
                         [&](const Vec& p) { return (p - base).norm() <= tol * (1.0 + p.norm()); });
  }
  return false;
}

Vec BaseShape::sample(std::mt19937_64& rng, int k) const {
  Vec out(2 * k);
  switch (kind) {
    case Kind::Ball: {
      std::normal_distribution<double> gauss;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int i = 0; i < 2 * k; ++i) out[i] = gauss(rng);
      out *= radii[0] * std::pow(unit(rng), 1.0 / (2 * k)) / std::max(out.norm(), 1e-300);
      return out;
    }
    case Kind::Polydisk:
      for (int i = 0; i < k; ++i) out.segment(2 * i, 2) = unit_disk_point(rng, radii[i]);
      return out;
    case Kind::Torus: {
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      for (int i = 0; i < k; ++i) {
        const double phi = angle(rng);
        out[2 * i] = radii[i] * std::cos(phi);
        out[2 * i + 1] = radii[i] * std::sin(phi);
      }
      return out;
    }
    case Kind::PointCloud: {
      std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
      return cloud[pick(rng)];
    }
  }
  return out;
}

void CoisotropicCylinder::validate() const {
  if (k < 0 || n < 1 || k >= n) throw ValidationError("cylinder: need 0 <= k < n");
  if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("cylinder: fiber box L must be > 0");
  base.validate(k);
}

bool CoisotropicCylinder::contains(const Vec& z, double tol) const {
  if (z.size() != 2 * n) return false;
  if (!base.contains(z.head(2 * k), tol)) return false;
  for (int j = k; j < n; ++j) {
    if (std::abs(z[2 * j + 1]) > tol) return false;
  }
  return true;
}

std::vector<Vec> sample_cylinder(const CoisotropicCylinder& cyl, std::size_t count, std::uint64_t seed) {
  cyl.validate();
  std::vector<Vec> out;
  out.reserve(count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> fiber(-cyl.L, cyl.L);
  for (std::size_t i = 0; i < count; ++i) {
    Vec z = Vec::Zero(2 * cyl.n);
    z.head(2 * cyl.k) = cyl.base.sample(rng, cyl.k);
    for (int j = cyl.k; j < cyl.n; ++j) z[2 * j] = fiber(rng);
    out.push_back(std::move(z));
  }
  return out;
}

double fiber_residual(const Vec& image, int k) {
  double acc = 0.0;
  for (Eigen::Index j = k; 2 * j < image.size(); ++j) acc += image[2 * j] * image[2 * j];
  return std::sqrt(acc);
}

CamelPointSet find_camel_points(const MapFn& psi, const CoisotropicCylinder& cyl, double t,
                                const CamelSearchOptions& opts) {
  cyl.validate();
  if (!(opts.tol > 0.0)) throw ValidationError("find_camel_points: tol must be > 0");
  if (opts.starts < 0) throw ValidationError("find_camel_points: starts must be >= 0");
  const int d = cyl.n - cyl.k;

  struct Found {
    bool ok = false;
    Vec point, image;
    double residual = 0.0;
  };
  std::vector<Found> found(static_cast<std::size_t>(opts.starts));
  parallel_for(found.size(), [&](std::size_t s) {
    const Vec start = sample_cylinder(cyl, 1, task_seed(opts.seed, s)).front();
    RootProblem prob{&psi, &start, cyl.k, cyl.n};
    gsl_multiroot_function fn{&fiber_equations, static_cast<std::size_t>(d), &prob};
    gsl_vector* x = gsl_vector_alloc(d);
    for (int i = 0; i < d; ++i) gsl_vector_set(x, i, start[2 * (cyl.k + i)]);
    gsl_multiroot_fsolver* solver = gsl_multiroot_fsolver_alloc(gsl_multiroot_fsolver_hybrids, d);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    int status = gsl_multiroot_fsolver_set(solver, &fn, x);
    for (int it = 0; status == GSL_SUCCESS && it < opts.max_iterations; ++it) {
      status = gsl_multiroot_fsolver_iterate(solver);
      if (status != GSL_SUCCESS) break;
      if (gsl_multiroot_test_residual(solver->f, 1e-3 * opts.tol) == GSL_SUCCESS) break;
    }
    gsl_set_error_handler(old);
    Vec z = start;
    for (int i = 0; i < d; ++i) z[2 * (cyl.k + i)] = gsl_vector_get(solver->x, i);
    gsl_multiroot_fsolver_free(solver);
    gsl_vector_free(x);

    // Independent re-evaluation decides acceptance.
    if (!z.allFinite()) return;
    Vec image = psi(z);
    const double res = fiber_residual(image, cyl.k);
    if (std::isfinite(res) && res <= opts.tol) found[s] = {true, std::move(z), std::move(image), res};
  });

  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < found.size(); ++s) {
    if (found[s].ok) order.push_back(s);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return lex_less(found[x].point, found[y].point); });
  CamelPointSet set;
  set.t = t;
  set.k = cyl.k;
  set.starts = opts.starts;
  for (std::size_t s : order) {
    set.points.push_back(found[s].point);
    set.images.push_back(found[s].image);
    set.residuals.push_back(found[s].residual);
  }
  return set;
}

std::vector<Vec> reduce_points(const CamelPointSet& set, int k) {
  if (k < 0) throw ValidationError("reduce_points: k must be >= 0");
  std::vector<Vec> out;
  out.reserve(set.images.size());
  for (const auto& img : set.images) {
    if (2 * k > img.size()) throw ValidationError("reduce_points: k exceeds the dimension");
    out.push_back(img.head(2 * k));
  }
  return out;
}

double camel_bound(double r, double A, double B, double t) {
  if (!(B > 0.0)) throw ValidationError("camel_bound: B must be > 0");
  const double denom = 2.0 - std::exp(B * std::abs(t));
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (r + A / B) / denom;
}

double auto_fiber_box(const GrowthCertificate& cert, double r, double t) {
  const double bound = camel_bound(r, cert.A, cert.B, t);
  return std::isfinite(bound) ? 1.25 * bound : 10.0 * (r + cert.A / cert.B);
}

CamelBoundReport camel_bound_check(const GenericHamiltonianSystem& sys, const CoisotropicCylinder& cyl,
                                   double t, const CamelPointSet& pts, double tol, double dt) {
  if (!sys.certificate) throw ValidationError("camel_bound_check: system has no growth certificate");
  if (cyl.base.kind != BaseShape::Kind::Ball) throw ValidationError("camel_bound_check: base must be a ball");
  if (!(dt > 0.0)) throw ValidationError("camel_bound_check: dt must be > 0");
  CamelBoundReport rep;
  rep.r = cyl.base.radii[0];
  rep.A = sys.certificate->A;
  rep.B = sys.certificate->B;
  rep.t = t;
  rep.bound = camel_bound(rep.r, rep.A, rep.B, t);
  rep.time_limit = std::log(2.0) / (3.0 * rep.B);
  rep.in_regime = std::abs(t) < rep.time_limit;
  const double a_over_b = rep.A / rep.B;

  std::vector<std::size_t> bad_bound(pts.points.size(), 0), bad_env(pts.points.size(), 0);
  parallel_for(pts.points.size(), [&](std::size_t i) {
    const Vec& z = pts.points[i];
    const double nz = z.norm();
    if (nz > rep.bound * (1.0 + tol)) bad_bound[i] = 1;
    const double span = std::abs(t);
    const auto steps = static_cast<long>(std::ceil(span / dt - 1e-9));
    const double h = steps > 0 ? t / static_cast<double>(steps) : 0.0;
    Vec w = z;
    for (long s = 0; s < steps; ++s) {
      w = midpoint_step_generic(w, static_cast<double>(s) * h, h, sys);
      const double e = std::expm1(rep.B * std::abs(static_cast<double>(s + 1) * h));
      const double slack = 1e-6 * (1.0 + nz);
      if (w.norm() > (e + 1.0) * nz + a_over_b * e + slack || (w - z).norm() > e * (nz + a_over_b) + slack) {
        bad_env[i] = 1;
        break;
      }
    }
  });
  rep.checked = pts.points.size();
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    rep.max_norm = std::max(rep.max_norm, pts.points[i].norm());
    rep.violations += bad_bound[i];
    rep.envelope_violations += bad_env[i];
    if ((bad_bound[i] || bad_env[i]) && !rep.offending) rep.offending = pts.points[i];
  }
  return rep;
}

Vec swap_map(const Vec& z, int k) {
  const auto n = z.size() / 2;
  Vec out(z.size());
  for (Eigen::Index i = 0; i < n; ++i) out.segment(2 * i, 2) = z.segment(2 * ((i + k) % n), 2);
  return out;
}

SwapReport swap_counterexample(const CoisotropicCylinder& cyl, std::size_t samples, std::uint64_t seed) {
  cyl.validate();
  SwapReport rep;
  rep.k = cyl.k;
  rep.n = cyl.n;
  rep.samples = samples;
  const int real_slots = std::min(cyl.k, cyl.n - cyl.k);
  rep.target_free_complex = cyl.k - real_slots;
  rep.target_capacity = cyl.k == 0 ? 0.0 : capacity_oracle(CapacityShape::coisotropic(rep.target_free_complex, cyl.k)).c_value;
  switch (cyl.base.kind) {
    case BaseShape::Kind::Ball:
      rep.base_capacity = capacity_oracle(CapacityShape::ball(cyl.base.radii[0], std::max(cyl.k, 1))).c_value;
      break;
    case BaseShape::Kind::Polydisk:
      rep.base_capacity = capacity_oracle(CapacityShape::polydisk(cyl.base.radii)).c_value;
      break;
    case BaseShape::Kind::Torus: {
      const double r = *std::min_element(cyl.base.radii.begin(), cyl.base.radii.end());
      rep.base_capacity = capacity_oracle(CapacityShape::polydisk(std::vector<double>(cyl.base.radii.size(), r))).c_value;
      break;
    }
    case BaseShape::Kind::PointCloud: rep.base_capacity = 0.0; break;
  }

  bool involution = true;
  for (const auto& z : sample_cylinder(cyl, samples, seed)) {
    const Vec image = swap_map(z, cyl.k);
    for (int i = 0; i < real_slots; ++i) {
      if (image[2 * i + 1] != 0.0) {
        ++rep.outside_target;
        break;
      }
    }
    if (swap_map(image, cyl.n - cyl.k) != z) involution = false;
  }
  rep.involution_ok = involution;

  const int dim = 2 * cyl.n;
  Mat P(dim, dim);
  for (int c = 0; c < dim; ++c) P.col(c) = swap_map(Vec::Unit(dim, c), cyl.k);
  const Mat omega = standard_omega(dim);
  rep.symplectic_defect = (P.transpose() * omega * P - omega).norm();
  return rep;
}

}  // namespace camel
