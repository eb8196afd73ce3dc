#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "camel_lab/errors.hpp"
#include "camel_lab/phase_space.hpp"
#include "test_support.hpp"

using namespace camel;
using camel::testing::kPi;
using Catch::Approx;

TEST_CASE("make_state validates lengths and finiteness", "[phase-space]") {
  auto zero = make_state(0, {0.0}, {0.0});
  CHECK(zero.order() == 0);
  CHECK(e_norm(zero) == 0.0);

  auto unit = make_state(1, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0});
  CHECK(unit.a(ModeIndex{0}) == 1.0);
  CHECK(e_norm(unit) == 1.0);

  CHECK_THROWS_AS(make_state(1, {0.0, 1.0}, {0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(make_state(0, {NAN}, {0.0}), ValidationError);
  CHECK_THROWS_AS(make_state(0, {0.0}, {INFINITY}), ValidationError);
  CHECK_THROWS_AS(make_state(-1, {}, {}), ValidationError);
}

TEST_CASE("e_norm is the Euclidean norm of the coefficients", "[phase-space]") {
  CHECK(e_norm(make_state(0, {3.0}, {4.0})) == 5.0);
  CHECK(e_norm(PhaseVector::basis(5, ModeIndex{3}, true)) == 1.0);

  std::mt19937_64 rng(7);
  auto u = testing::uniform_state(rng, 2);
  double acc = 0.0;
  for (double x : u.a()) acc += x * x;
  for (double x : u.b()) acc += x * x;
  CHECK(e_norm(u) == Approx(std::sqrt(acc)).epsilon(1e-15));
}

TEST_CASE("basis is orthonormal for the H^1/2 inner product", "[phase-space]") {
  // <f, g> = (1/2pi) int B f g. For phi_j^+ = lambda_j^{-1/2}(phi_j, 0) this reduces to
  // lambda_j^{1/2} lambda_k^{-1/2} (1/2pi) int phi_j phi_k, evaluated here by trapezoid quadrature.
  const int M = 256;
  for (int j = -6; j <= 6; ++j) {
    for (int k = -6; k <= 6; ++k) {
      double acc = 0.0;
      for (int i = 0; i < M; ++i) {
        const double x = 2.0 * kPi * i / M;
        acc += testing::phi(j, x) * testing::phi(k, x);
      }
      acc /= M;
      const double inner = std::sqrt(testing::lam(j)) / std::sqrt(testing::lam(k)) * acc;
      CHECK(inner == Approx(j == k ? 1.0 : 0.0).margin(1e-13));
    }
  }
}

TEST_CASE("f_theta_norm weights modes by lambda^-theta", "[phase-space]") {
  auto u = PhaseVector::basis(3, ModeIndex{1}, true);
  // sqrt(lambda_1^{-2 theta}) = lambda_1^{-1/4} = 2^{-1/8}; its square is 2^{-1/4}.
  CHECK(f_theta_norm(u, 0.25) == Approx(std::pow(2.0, -0.125)).epsilon(1e-15));
  CHECK(f_theta_norm(u, 0.25) * f_theta_norm(u, 0.25) == Approx(std::pow(2.0, -0.25)).epsilon(1e-15));

  auto zero_mode = PhaseVector::basis(3, ModeIndex{0}, false);
  CHECK(f_theta_norm(zero_mode, 0.4) == 1.0);

  std::mt19937_64 rng(3);
  auto w = testing::uniform_state(rng, 8);
  CHECK(f_theta_norm(w, 1e-12) == Approx(e_norm(w)).epsilon(1e-10));
  CHECK(f_theta_norm(w, 0.3) <= e_norm(w));

  CHECK_THROWS_AS(f_theta_norm(w, 0.0), ValidationError);
  CHECK_THROWS_AS(f_theta_norm(w, 0.5), ValidationError);
}

TEST_CASE("symplectic form on the basis", "[phase-space]") {
  const int n = 4;
  for (int j = -n; j <= n; ++j) {
    for (int k = -n; k <= n; ++k) {
      const auto pj = PhaseVector::basis(n, ModeIndex{j}, true);
      const auto mk = PhaseVector::basis(n, ModeIndex{k}, false);
      const auto pk = PhaseVector::basis(n, ModeIndex{k}, true);
      CHECK(symplectic_form(pj, mk) == (j == k ? 1.0 : 0.0));
      CHECK(symplectic_form(pj, pk) == 0.0);
    }
  }

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto xi = testing::uniform_state(rng, 5);
    auto eta = testing::uniform_state(rng, 3);
    CHECK(symplectic_form(xi, xi) == 0.0);
    CHECK(symplectic_form(xi, eta) == Approx(-symplectic_form(eta, xi)).margin(1e-15));
    // Mixed orders behave as zero-padding.
    CHECK(symplectic_form(xi, eta) == Approx(symplectic_form(xi, eta.padded(5))).margin(1e-15));
  }
}

TEST_CASE("projections decompose the identity", "[phase-space]") {
  const auto p0 = PhaseVector::basis(3, ModeIndex{0}, true);
  CHECK(project(p0, Region::low(0)) == p0);
  const auto p3 = PhaseVector::basis(3, ModeIndex{3}, true);
  CHECK(e_norm(project(p3, Region::minus(0))) == 0.0);
  CHECK(project(p3, Region::plus(0)) == p3);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto u = testing::uniform_state(rng, 6);
    for (int k = 0; k <= 6; ++k) {
      const auto low = project(u, Region::low(k));
      CHECK(project(low, Region::low(k)) == low);
      CHECK(low + project(u, Region::plus(k)) + project(u, Region::minus(k)) == u);
      CHECK(e_norm(project(low, Region::tail(k))) == 0.0);
      CHECK(project(u, Region::tail(k)) + low == u);
    }
  }
  auto u = testing::uniform_state(rng, 2);
  CHECK_THROWS_AS(project(u, Region::low(3)), ValidationError);
  CHECK_THROWS_AS(project(u, Region::plus(-1)), ValidationError);
}

TEST_CASE("grid transforms", "[phase-space]") {
  SECTION("zero vector samples to zero") {
    auto g = to_grid(PhaseVector::zero(3), 16);
    for (double x : g.u) CHECK(x == 0.0);
    for (double x : g.v) CHECK(x == 0.0);
  }
  SECTION("a_0 = 1 is the constant function 1") {
    auto g = to_grid(PhaseVector::basis(2, ModeIndex{0}, true), 16);
    for (double x : g.u) CHECK(x == Approx(1.0).epsilon(1e-15));
  }
  SECTION("samples match direct summation, including the sign of v") {
    std::mt19937_64 rng(17);
    auto s = testing::uniform_state(rng, 7);
    const std::size_t m = 32;
    auto g = to_grid(s, m);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = 2.0 * kPi * i / m;
      CHECK(g.u[i] == Approx(testing::u_at(s, x)).margin(1e-13));
      CHECK(g.v[i] == Approx(testing::v_at(s, x)).margin(1e-13));
    }
  }
  SECTION("round trip is exact on band-limited data") {
    std::mt19937_64 rng(19);
    for (int n : {0, 1, 5, 16, 31}) {
      auto s = testing::uniform_state(rng, n);
      for (std::size_t m : {min_grid_size(n), 2 * min_grid_size(n)}) {
        auto back = from_grid(to_grid(s, m), n);
        CHECK(e_norm(back - s) <= 1e-12 * e_norm(s));
      }
    }
  }
  SECTION("grid size rule") {
    CHECK(min_grid_size(0) == 4);
    CHECK(min_grid_size(3) == 16);
    CHECK(min_grid_size(16) == 128);
    auto s = PhaseVector::zero(4);
    CHECK_THROWS_AS(to_grid(s, 16), ValidationError);  // needs 20
    CHECK_THROWS_AS(to_grid(s, 24), ValidationError);  // not a power of two
    CHECK_NOTHROW(to_grid(s, 32));
    CHECK_THROWS_AS(from_grid(to_grid(s, 32), 8), ValidationError);
  }
}

TEST_CASE("mode amplitude", "[phase-space]") {
  CHECK(mode_amplitude(PhaseVector::zero(2), ModeIndex{1}) == 0.0);
  auto u = make_state(1, {0.0, 0.0, 3.0}, {0.0, 0.0, 4.0});
  CHECK(mode_amplitude(u, ModeIndex{1}) == 5.0);
  CHECK_THROWS_AS(mode_amplitude(u, ModeIndex{2}), ValidationError);
}

TEST_CASE("padding and arithmetic preserve the E-norm", "[phase-space]") {
  std::mt19937_64 rng(23);
  auto u = testing::uniform_state(rng, 3);
  auto p = u.padded(9);
  CHECK(p.order() == 9);
  CHECK(e_norm(p) == e_norm(u));
  CHECK(p.truncated(3) == u);
  CHECK(e_norm((u + p) - 2.0 * p) == 0.0);
  CHECK_THROWS_AS(u.padded(2), ValidationError);
  CHECK(PhaseVector::from_flat(3, u.flat()) == u);
}

TEST_CASE("CSV serialization round-trips exactly", "[phase-space][io]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = testing::random_state(rng, trial, 1.7);
    const auto text = to_csv(u);
    CHECK(text.starts_with("# order=" + std::to_string(trial) + "\n"));
    CHECK(phase_vector_from_csv(text) == u);
  }
  CHECK_THROWS_AS(phase_vector_from_csv("0,1,2\n"), ValidationError);
  CHECK_THROWS_AS(phase_vector_from_csv("# order=1\n0,1,2\n"), ValidationError);
  CHECK_THROWS_AS(phase_vector_from_csv("# order=0\n0,x,2\n"), ValidationError);
}
