#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

#include "camel_lab/errors.hpp"
#include "camel_lab/galerkin.hpp"
#include "test_support.hpp"

using namespace camel;
using Catch::Approx;

namespace {
const NonlinearitySpec kSG = NonlinearitySpec::sine_gordon();
}

TEST_CASE("ball samples stay in the ball", "[galerkin]") {
  std::mt19937_64 rng(81);
  double largest = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto u = sample_ball(rng, 12, 2.5);
    CHECK(u.order() == 12);
    largest = std::max(largest, e_norm(u));
  }
  CHECK(largest <= 2.5 + 1e-12);
  CHECK(largest > 2.3);
}

TEST_CASE("isotonic regression", "[galerkin]") {
  const std::vector<double> mono{5, 4, 4, 1};
  CHECK(isotonic_nonincreasing(mono) == mono);
  const std::vector<double> bump{3, 1, 2, 0};
  const auto fit = isotonic_nonincreasing(bump);
  CHECK(fit == std::vector<double>{3, 1.5, 1.5, 0});
  const std::vector<double> rising{1, 2, 3};
  for (double v : isotonic_nonincreasing(rising)) CHECK(v == Approx(2.0));
  CHECK(isotonic_nonincreasing(std::vector<double>{}).empty());
}

TEST_CASE("epsilon curve", "[galerkin]") {
  SECTION("zero nonlinearity gives zero") {
    auto r = epsilon_curve(NonlinearitySpec::zero(), 2.0, 1.0, {2, 4, 8}, 10, 1, 16);
    for (double e : r.errors) CHECK(e == 0.0);
  }
  SECTION("n = N_probe gives zero up to round-off") {
    auto r = epsilon_curve(kSG, 2.0, 1.0, {4, 16}, 20, 2, 16);
    CHECK(r.errors[1] < 1e-8);
  }
  SECTION("sine-Gordon decays monotonically") {
    auto r = epsilon_curve(kSG, 1.0, 1.0, {4, 8, 16, 32, 64}, 100, 3, 128);
    for (std::size_t i = 1; i < r.errors.size(); ++i) {
      CHECK(r.isotonic_errors[i] < r.isotonic_errors[i - 1]);
      CHECK(r.isotonic_errors[i] <= r.isotonic_errors[i - 1]);
    }
    CHECK(r.errors.back() < 1e-3);
    CHECK(r.errors.back() < r.errors.front() / 10.0);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(epsilon_curve(kSG, 0.0, 1.0, {4}, 10, 1, 8), ValidationError);
    CHECK_THROWS_AS(epsilon_curve(kSG, 1.0, 1.0, {8, 4}, 10, 1, 16), ValidationError);
    CHECK_THROWS_AS(epsilon_curve(kSG, 1.0, 1.0, {4, 32}, 10, 1, 16), ValidationError);
    CHECK_THROWS_AS(epsilon_curve(kSG, 1.0, 1.0, {4}, 10, 1, 16, 32), ValidationError);
  }
}

TEST_CASE("epsilon curve is reproducible and thread-count independent", "[galerkin]") {
  auto first = epsilon_curve(kSG, 2.0, 1.0, {4, 8}, 30, 7, 32);
  ::setenv("CAMEL_LAB_THREADS", "3", 1);
  auto second = epsilon_curve(kSG, 2.0, 1.0, {4, 8}, 30, 7, 32);
  ::unsetenv("CAMEL_LAB_THREADS");
  CHECK(first.errors == second.errors);
  CHECK(to_csv(first) == to_csv(second));
  auto other = epsilon_curve(kSG, 2.0, 1.0, {4, 8}, 30, 8, 32);
  CHECK(other.errors != first.errors);
}

TEST_CASE("report CSV layout", "[galerkin][io]") {
  auto r = epsilon_curve(kSG, 1.0, 0.5, {2, 4}, 5, 11, 8);
  const auto text = to_csv(r);
  CHECK(text.find("# spec=sine-gordon\n") == 0);
  CHECK(text.find("n,raw_error,isotonic_error\n2,") != std::string::npos);
}

TEST_CASE("flow approximation error", "[galerkin]") {
  FlowConfig cfg;
  cfg.dt = 1e-2;
  CHECK(approx_error(kSG, 1.0, 16, 16, 1.0, 5, 1, cfg) == 0.0);
  CHECK(approx_error(NonlinearitySpec::zero(), 1.0, 4, 16, 1.0, 5, 1, cfg) < 1e-14);

  std::vector<double> errs;
  for (int n : {4, 8, 16}) errs.push_back(approx_error(kSG, 1.0, n, 64, 1.0, 10, 5, cfg));
  CHECK(errs[0] > errs[1]);
  CHECK(errs[1] > errs[2]);
  CHECK(errs[2] > 0.0);

  auto eps = epsilon_curve(kSG, 1.0, 1.0, {4, 8, 16}, 100, 6, 64);
  const double C = gronwall_constant(errs, eps.errors);
  CHECK(C > 0.0);
  for (std::size_t i = 0; i < errs.size(); ++i) CHECK(errs[i] <= C * eps.errors[i] * (1.0 + 1e-12));
  CHECK_THROWS_AS(approx_error(kSG, 1.0, 20, 16, 1.0, 5, 1, cfg), ValidationError);
}
