#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "camel_lab/linear_ops.hpp"
#include "test_support.hpp"

using namespace camel;
using Catch::Approx;

namespace {

// Oracle: integrate u' = -Bv, v' = (B - B^{-1})u for a single Fourier mode in physical
// amplitudes (U, V) = (a lambda^{-1/2}, -b lambda^{-1/2}) with adaptive Dormand-Prince,
// then map back to (a, b).
std::array<double, 2> ode_block_image(int j, double t, double a0, double b0) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double lam = testing::lam(j);
  const double w = 1.0 / std::sqrt(lam);
  State y{a0 * w, -b0 * w};
  auto rhs = [lam](const State& s, State& d, double) {
    d[0] = -lam * s[1];
    d[1] = (lam - 1.0 / lam) * s[0];
  };
  if (t != 0.0) {
    auto stepper = odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, t, t / 1000.0);
  }
  return {y[0] / w, -y[1] / w};
}

}  // namespace

TEST_CASE("lambda", "[linear-ops]") {
  CHECK(lambda(ModeIndex{0}) == 1.0);
  CHECK(lambda(ModeIndex{1}) == Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(lambda(ModeIndex{-3}) == Approx(std::sqrt(10.0)).epsilon(1e-15));
  for (int j = 0; j < 50; ++j) CHECK(lambda(ModeIndex{j}) == lambda(ModeIndex{-j}));
}

TEST_CASE("diagonal operators", "[linear-ops]") {
  const auto p0 = PhaseVector::basis(3, ModeIndex{0}, true);
  CHECK(e_norm(apply_diag(DiagOp::A, p0)) == 0.0);

  const auto m1 = PhaseVector::basis(3, ModeIndex{1}, false);
  CHECK(apply_diag(DiagOp::B, m1).b(ModeIndex{1}) == Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto p2 = PhaseVector::basis(3, ModeIndex{-2}, true);
  CHECK(apply_diag(DiagOp::A, p2).a(ModeIndex{-2}) ==
        Approx(std::sqrt(5.0) - 1.0 / std::sqrt(5.0)).epsilon(1e-15));
  const auto m2 = PhaseVector::basis(3, ModeIndex{-2}, false);
  CHECK(apply_diag(DiagOp::A, m2).b(ModeIndex{-2}) == Approx(std::sqrt(5.0)).epsilon(1e-15));

  std::mt19937_64 rng(1);
  auto u = testing::uniform_state(rng, 10);
  CHECK(testing::max_abs_diff(apply_diag(DiagOp::Binv, apply_diag(DiagOp::B, u)), u) < 1e-15);
}

TEST_CASE("complex structure J", "[linear-ops]") {
  std::mt19937_64 rng(2);
  auto u = testing::uniform_state(rng, 6);
  CHECK(apply_J(apply_J(u)) == -u);
  for (int j = -3; j <= 3; ++j) {
    CHECK(apply_J(PhaseVector::basis(3, ModeIndex{j}, true)) == -PhaseVector::basis(3, ModeIndex{j}, false));
  }
  CHECK(e_norm(apply_J(PhaseVector::zero(4))) == 0.0);
  // omega(xi, eta) = <-J xi, eta>.
  for (int trial = 0; trial < 10; ++trial) {
    auto xi = testing::uniform_state(rng, 4);
    auto eta = testing::uniform_state(rng, 4);
    CHECK(symplectic_form(xi, eta) == Approx(e_inner(-apply_J(xi), eta)).margin(1e-14));
  }
}

TEST_CASE("exp_block closed forms", "[linear-ops]") {
  for (int j : {-5, 0, 1, 7}) {
    auto id = exp_block(ModeIndex{j}, 0.0);
    CHECK(id.m11 == 1.0);
    CHECK(id.m12 == 0.0);
    CHECK(id.m21 == 0.0);
    CHECK(id.m22 == 1.0);
  }
  auto half_turn = exp_block(ModeIndex{1}, camel::testing::kPi);
  CHECK(half_turn.m11 == Approx(-1.0).epsilon(1e-15));
  CHECK(half_turn.m22 == Approx(-1.0).epsilon(1e-15));
  CHECK(half_turn.m12 == Approx(0.0).margin(1e-15));
  CHECK(half_turn.m21 == Approx(0.0).margin(1e-15));

  auto shear = exp_block(ModeIndex{0}, 2.0);
  CHECK(shear.m11 == 1.0);
  CHECK(shear.m12 == 2.0);
  CHECK(shear.m21 == 0.0);
  CHECK(shear.m22 == 1.0);
}

TEST_CASE("exp_block matches adaptive ODE integration", "[linear-ops][oracle]") {
  double worst = 0.0;
  for (int j = -16; j <= 16; ++j) {
    for (double t : {-1.0, -0.1, 0.1, 1.0, 3.0}) {
      const auto blk = exp_block(ModeIndex{j}, t);
      const auto col1 = ode_block_image(j, t, 1.0, 0.0);
      const auto col2 = ode_block_image(j, t, 0.0, 1.0);
      worst = std::max({worst, std::abs(blk.m11 - col1[0]), std::abs(blk.m21 - col1[1]),
                        std::abs(blk.m12 - col2[0]), std::abs(blk.m22 - col2[1])});
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("blocks are symplectic with eigenvalues exp(+-itj)", "[linear-ops]") {
  for (int j = -64; j <= 64; ++j) {
    for (double t : {-10.0, -1.0, 0.3, 2.5, 10.0}) {
      const auto blk = exp_block(ModeIndex{j}, t);
      CHECK(blk.det() == Approx(1.0).margin(1e-12));
      // det 1 and trace 2 cos(tj) pin the spectrum to exp(+-itj).
      CHECK(blk.m11 + blk.m22 == Approx(2.0 * std::cos(t * j)).margin(1e-12));
    }
  }
}

TEST_CASE("apply_exp_tJA group law and symplecticity", "[linear-ops]") {
  std::mt19937_64 rng(4);
  auto u = testing::uniform_state(rng, 12);
  CHECK(apply_exp_tJA(u, 0.0) == u);
  CHECK(testing::max_abs_diff(apply_exp_tJA(apply_exp_tJA(u, 1.3), -1.3), u) < 1e-10);
  CHECK(testing::max_abs_diff(apply_exp_tJA(apply_exp_tJA(u, 0.4), 0.9), apply_exp_tJA(u, 1.3)) <
        1e-10);
  for (int trial = 0; trial < 20; ++trial) {
    auto xi = testing::uniform_state(rng, 12);
    auto eta = testing::uniform_state(rng, 12);
    const double t = 5.0 * (trial - 10) / 10.0;
    CHECK(symplectic_form(apply_exp_tJA(xi, t), apply_exp_tJA(eta, t)) ==
          Approx(symplectic_form(xi, eta)).margin(1e-12));
  }
}

TEST_CASE("apply_exp_tJA matches the ODE oracle on a random state", "[linear-ops][oracle]") {
  std::mt19937_64 rng(8);
  auto u = testing::uniform_state(rng, 10);
  auto image = apply_exp_tJA(u, 0.7);
  for (int j = -10; j <= 10; ++j) {
    const auto expected = ode_block_image(j, 0.7, u.a(ModeIndex{j}), u.b(ModeIndex{j}));
    CHECK(image.a(ModeIndex{j}) == Approx(expected[0]).margin(1e-10));
    CHECK(image.b(ModeIndex{j}) == Approx(expected[1]).margin(1e-10));
  }
}

TEST_CASE("group norm bound", "[linear-ops]") {
  CHECK(group_norm_bound(0.0, 20) == Approx(1.0).epsilon(1e-15));

  double previous = 1.0;
  for (double t = 0.25; t <= 8.0; t += 0.25) {
    const double shear = exp_block(ModeIndex{0}, t).norm();
    CHECK(shear == Approx(std::sqrt(1.0 + t * t / 2.0 + t * std::sqrt(1.0 + t * t / 4.0))).epsilon(1e-13));
    CHECK(shear >= previous);
    CHECK(exp_block(ModeIndex{0}, -t).norm() == Approx(shear).epsilon(1e-14));
    previous = shear;
  }

  // High modes approach rotations, so the bound stabilises in n_max.
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(group_norm_bound(t, 64) == group_norm_bound(t, 256));
    CHECK(exp_block(ModeIndex{200}, t).norm() == Approx(1.0).margin(1e-2));
  }
}

TEST_CASE("LinearPropagator caches blocks for fixed t", "[linear-ops]") {
  std::mt19937_64 rng(6);
  const LinearPropagator prop(8, 0.37);
  auto u = testing::uniform_state(rng, 8);
  CHECK(prop.apply(u) == apply_exp_tJA(u, 0.37));
  auto small = testing::uniform_state(rng, 3);
  CHECK(prop.apply(small) == apply_exp_tJA(small, 0.37));
  CHECK_THROWS(prop.apply(testing::uniform_state(rng, 9)));
}

TEST_CASE("quadratic energy is conserved by the linear flow", "[linear-ops]") {
  std::mt19937_64 rng(9);
  auto u = testing::uniform_state(rng, 6);
  const double e0 = quadratic_energy(u);
  CHECK(e0 == Approx(0.5 * e_inner(apply_diag(DiagOp::A, u), u)).epsilon(1e-14));
  for (double t : {0.1, 1.0, 7.5}) CHECK(quadratic_energy(apply_exp_tJA(u, t)) == Approx(e0).epsilon(1e-12));
}
