#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "camel_lab/capacity.hpp"
#include "camel_lab/cylinder.hpp"
#include "camel_lab/displacement.hpp"
#include "camel_lab/enclosing_ball.hpp"
#include "camel_lab/errors.hpp"
#include "camel_lab/galerkin.hpp"
#include "camel_lab/hamiltonian_algebra.hpp"
#include "camel_lab/integrators.hpp"
#include "camel_lab/linear_ops.hpp"
#include "camel_lab/modes.hpp"
#include "camel_lab/systems.hpp"

namespace py = pybind11;
using namespace camel;

namespace {

Mat block_matrix(int j, double t) {
  const auto b = exp_block(ModeIndex{j}, t);
  Mat m(2, 2);
  m << b.m11, b.m12, b.m21, b.m22;
  return m;
}

py::dict camel_experiment(int n, int k, double r, double A, double t, double dt, int starts, double tol,
                          std::uint64_t seed) {
  const auto sys = pendulum_chain(n, A);
  CoisotropicCylinder cyl{k, n, BaseShape::ball(r), auto_fiber_box(*sys.certificate, r, t)};
  CamelSearchOptions opts;
  opts.starts = starts;
  opts.tol = tol;
  opts.seed = seed;
  CamelPointSet set;
  CamelBoundReport rep;
  {
    py::gil_scoped_release release;
    set = find_camel_points(time_map(sys, 0.0, t, dt), cyl, t, opts);
    rep = camel_bound_check(sys, cyl, t, set, 0.01, dt);
  }
  py::dict out;
  out["points"] = set.points;
  out["residuals"] = set.residuals;
  out["reduced"] = reduce_points(set, k);
  out["fiber_box"] = cyl.L;
  out["bound"] = rep.bound;
  out["in_regime"] = rep.in_regime;
  out["max_norm"] = rep.max_norm;
  out["violations"] = rep.violations;
  out["envelope_violations"] = rep.envelope_violations;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truncated nonlinear string equation and coisotropic camel geometry";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
  py::register_exception<PropertyViolation>(m, "PropertyViolation", PyExc_RuntimeError);

  py::class_<PhaseVector>(m, "PhaseVector")
      .def(py::init<int, std::vector<double>, std::vector<double>>(), py::arg("order"), py::arg("a"), py::arg("b"))
      .def_static("zero", &PhaseVector::zero, py::arg("order"))
      .def_static("basis", [](int order, int j, bool plus) { return PhaseVector::basis(order, ModeIndex{j}, plus); },
                  py::arg("order"), py::arg("j"), py::arg("plus") = true)
      .def_property_readonly("order", &PhaseVector::order)
      .def_property_readonly("a", [](const PhaseVector& u) { return std::vector<double>(u.a().begin(), u.a().end()); })
      .def_property_readonly("b", [](const PhaseVector& u) { return std::vector<double>(u.b().begin(), u.b().end()); })
      .def("padded", &PhaseVector::padded)
      .def("truncated", &PhaseVector::truncated)
      .def("to_csv", [](const PhaseVector& u) { return to_csv(u); })
      .def_static("from_csv", [](const std::string& s) { return phase_vector_from_csv(s); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(double() * py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const PhaseVector& u) { return "PhaseVector(order=" + std::to_string(u.order()) + ")"; });

  m.def("e_norm", &e_norm);
  m.def("symplectic_form", &symplectic_form);
  m.def("f_theta_norm", &f_theta_norm, py::arg("u"), py::arg("theta"));
  m.def("mode_amplitude", [](const PhaseVector& u, int l) { return mode_amplitude(u, ModeIndex{l}); });
  m.def("min_grid_size", &min_grid_size);
  m.def("sample_ball", [](std::uint64_t seed, int order, double R, double decay) {
    std::mt19937_64 rng(seed);
    return sample_ball(rng, order, R, decay);
  }, py::arg("seed"), py::arg("order"), py::arg("R"), py::arg("decay") = 1.0);

  py::class_<NonlinearitySpec>(m, "NonlinearitySpec")
      .def_static("sine_gordon", &NonlinearitySpec::sine_gordon)
      .def_static("zero", &NonlinearitySpec::zero)
      .def_static("by_name", [](const std::string& s) { return NonlinearitySpec::by_name(s); })
      .def_readonly("C0", &NonlinearitySpec::C0)
      .def_property_readonly("name", &NonlinearitySpec::name);

  m.def("grad_h", &grad_h, py::arg("spec"), py::arg("t"), py::arg("u"), py::arg("m"));
  m.def("grad_h_trunc", &grad_h_trunc, py::arg("spec"), py::arg("t"), py::arg("u"), py::arg("n"), py::arg("m"));
  m.def("h_value", [](const NonlinearitySpec& s, double t, const PhaseVector& u, std::size_t grid) {
    return h_value(s, t, u, grid).value;
  }, py::arg("spec"), py::arg("t"), py::arg("u"), py::arg("m"));

  m.def("exp_block", &block_matrix, py::arg("j"), py::arg("t"), "2x2 block of e^{tJA} on mode j");
  m.def("apply_exp_tJA", &apply_exp_tJA, py::arg("u"), py::arg("t"));
  m.def("group_norm_bound", &group_norm_bound, py::arg("t"), py::arg("n_max"));

  m.def("strang_step", &strang_step, py::arg("u"), py::arg("t"), py::arg("dt"), py::arg("spec"), py::arg("n"),
        py::arg("m"));
  m.def("flow_final", [](const PhaseVector& u0, const NonlinearitySpec& spec, int n, double dt, double t1,
                         const std::string& scheme, double t0) {
    FlowConfig cfg;
    cfg.n = n;
    cfg.dt = dt;
    cfg.t0 = t0;
    cfg.t1 = t1;
    cfg.scheme = scheme_from_string(scheme);
    py::gil_scoped_release release;
    return flow_final(u0, cfg, spec);
  }, py::arg("u0"), py::arg("spec"), py::arg("n"), py::arg("dt"), py::arg("t1"), py::arg("scheme") = "strang",
     py::arg("t0") = 0.0);
  m.def("picard_mild", &picard_mild, py::arg("u0"), py::arg("t"), py::arg("spec"), py::arg("n"), py::arg("m"),
        py::arg("tol"), py::call_guard<py::gil_scoped_release>());

  m.def("epsilon_curve", [](const NonlinearitySpec& spec, double R, double T, const std::vector<int>& n_values,
                            int samples, std::uint64_t seed, int N_probe) {
    ConvergenceReport rep;
    {
      py::gil_scoped_release release;
      rep = epsilon_curve(spec, R, T, n_values, samples, seed, N_probe);
    }
    py::dict d;
    d["n_values"] = rep.n_values;
    d["errors"] = rep.errors;
    d["isotonic_errors"] = rep.isotonic_errors;
    return d;
  }, py::arg("spec"), py::arg("R"), py::arg("T"), py::arg("n_values"), py::arg("samples"), py::arg("seed"),
     py::arg("N_probe"));

  m.def("min_enclosing_ball", [](const Mat& points) {
    std::vector<Vec> pts;
    for (Eigen::Index i = 0; i < points.rows(); ++i) pts.emplace_back(points.row(i).transpose());
    const auto ball = min_enclosing_ball(pts);
    return py::make_tuple(ball.center, ball.radius);
  }, py::arg("points"), "Smallest enclosing ball of the rows of an (N, d) array");

  m.def("camel_bound", &camel_bound, py::arg("r"), py::arg("A"), py::arg("B"), py::arg("t"));
  m.def("camel_experiment", &camel_experiment, py::arg("n") = 2, py::arg("k") = 1, py::arg("r") = 1.0,
        py::arg("A") = 0.5, py::arg("t") = 0.2, py::arg("dt") = 1e-3, py::arg("starts") = 64, py::arg("tol") = 1e-8,
        py::arg("seed") = 1, "Camel points of a certified pendulum chain over a ball-based cylinder");

  m.def("capacity", [](const std::string& shape, double r, int n, int k, const std::vector<double>& radii) {
    const auto e = capacity_oracle(capacity_shape_from_name(shape, r, n, k, radii));
    return py::make_tuple(e.c_value, e.gamma_value);
  }, py::arg("shape"), py::arg("r") = 1.0, py::arg("n") = 2, py::arg("k") = 1,
     py::arg("radii") = std::vector<double>{}, "(c, gamma) of a model set");
  m.def("capacity_table_consistent", [](const std::vector<double>& lambdas) {
    return check_capacity_table(capacity_table(), lambdas).passed();
  }, py::arg("lambdas"));

  m.def("displacement_demo", [](std::size_t samples, std::uint64_t seed) {
    const auto rep = displacement_demo(DisplacementProfile::arctan(), samples, seed);
    py::dict d;
    d["violations"] = rep.violations;
    d["min_margin"] = rep.min_margin;
    d["energy_bound"] = rep.energy_bound;
    return d;
  }, py::arg("samples"), py::arg("seed") = 1);

  m.def("algebra_check", [](std::size_t points, double t, double dt, std::uint64_t seed) {
    auto [H, K] = bounded_pair();
    AlgebraReport rep;
    {
      py::gil_scoped_release release;
      rep = algebra_check(H, K, points, 1.0, t, dt, seed);
    }
    return py::make_tuple(rep.compose_error, rep.inverse_error);
  }, py::arg("points"), py::arg("t") = 1.0, py::arg("dt") = 1e-3, py::arg("seed") = 1);

  m.def("maximize_mode", [](const NonlinearitySpec& spec, int l, double r, double t0, int n, double dt, int starts,
                            std::uint64_t seed) {
    FlowConfig cfg;
    cfg.n = n;
    cfg.dt = dt;
    ModeSearchOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    ModeWitness w;
    {
      py::gil_scoped_release release;
      w = maximize_mode(spec, l, ModeBase::disk(l, r), t0, cfg, opts);
    }
    return py::make_tuple(w.initial, w.value);
  }, py::arg("spec"), py::arg("l"), py::arg("r"), py::arg("t0"), py::arg("n"), py::arg("dt") = 1e-2,
     py::arg("starts") = 4, py::arg("seed") = 1, "Best (initial state, |U_l(t0)|) over the mode-l disk");
}
