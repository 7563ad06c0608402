#include "doctest.h"

#include <cmath>
#include <random>

#include "sizepop/errors.hpp"
#include "sizepop/evolution.hpp"
#include "sizepop/resolvent.hpp"
#include "support/random_models.hpp"

using namespace sizepop;

TEST_CASE("omega_min") {
  SUBCASE("conservative models need no shift") {
    std::mt19937_64 rng(61);
    testing::ModelGenOptions opt;
    opt.boundary = testing::BoundaryKind::conservative;
    for (int k = 0; k < 100; ++k) CHECK(omega_min(testing::random_model(rng, opt)) == 0.0);
  }
  SUBCASE("explicit constants with outflow at zero") {
    // c1 = 0.25 / (1 - 0.5) = 0.5, left bracket 0.5 / 0.5 = 1.
    const Model model(1.0, Coefficient::constant(0.0), Coefficient::constant(0.5), Coefficient::constant(0.25),
                      Kernel::constant(0.0), {1.0, 1.0, 0.0, 0.0, false});
    CHECK(omega_min(model) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("heavy mortality clamps at zero") {
    CHECK(omega_min(testing::flat_model(1.0, 1.0, 50.0, 0.0)) == 0.0);
  }
}

TEST_CASE("resolvent solutions") {
  const auto model = testing::flat_model(1.0, 1.0, 0.0, 0.0);
  const auto g = assemble_generator(model, build_grid(1.0, 2));

  CHECK(solve_resolvent(g, 1.0, 1.0, PopulationState(3, 0.0)) == PopulationState(3, 0.0));

  for (double lambda : {0.01, 1.0, 37.0}) {
    for (double omega : {0.0, 0.5, 2.0}) {
      const auto u = solve_resolvent(g, lambda, omega, PopulationState(3, 1.0));
      for (double v : u.values()) {
        CHECK(v == doctest::Approx(1.0 / (1.0 + lambda * omega)).epsilon(1e-14));
      }
    }
  }

  const auto u = solve_resolvent(g, 1.0, 1.0, PopulationState({1.0, 0.0, 0.0}));
  CHECK(u[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(u[2] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  CHECK_THROWS_AS(solve_resolvent(g, 0.0, 1.0, PopulationState(3, 1.0)), ArgumentError);
  const auto with_birth = assemble_generator(testing::flat_model(1.0, 1.0, 0.0, 0.4), build_grid(1.0, 4));
  CHECK_THROWS_AS(ResolventSolver(with_birth, 1.0, 0.0), ArgumentError);
  CHECK_NOTHROW(ResolventSolver(with_birth.without_recruitment(), 1.0, 0.0));
}

TEST_CASE("constant right-hand side gives ratio one half") {
  const auto model = testing::flat_model(1.0, 1.0, 0.0, 0.0);
  const auto g = assemble_generator(model, build_grid(1.0, 16));
  const PopulationState h(g.size(), 1.0);
  const auto u = solve_resolvent(g, 1.0, 1.0, h);
  CHECK(weighted_norm(u, g) / weighted_norm(h, g) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("resolvent equals one implicit Euler step") {
  std::mt19937_64 rng(67);
  testing::ModelGenOptions opt;
  opt.recruitment = testing::RecruitmentKind::none;
  for (int k = 0; k < 20; ++k) {
    const auto model = testing::random_model(rng, opt);
    const auto g = assemble_generator(model, build_grid(model.m(), 24));
    const auto u = testing::random_state(rng, g.size(), -1.0, 1.0);
    const double dt = testing::uniform(rng, 1e-3, 1.0);
    const auto a = step_implicit_euler(g, u, dt);
    const auto b = solve_resolvent(g, dt, 0.0, u);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      scale = std::max(scale, std::abs(a[i]));
      diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    CHECK(diff <= 1e-12 * scale);
  }
}

TEST_CASE("dissipativity on the growth model") {
  const auto model = testing::growth_model(0.1, 0.4);
  const auto rep = dissipativity_check(model, build_grid(1.0, 64), {0.1, 1.0, 10.0}, 0.0, 100, 7);
  CHECK(rep.samples == 100);
  CHECK(rep.seed == 7);
  CHECK(rep.max_ratio <= 1.0 + 1e-10);
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.positivity_violations == 0);
  CHECK(rep.worst_entry >= -1e-12);
  CHECK_FALSE(rep.below_omega_min());
}

TEST_CASE("dissipativity on random models at the threshold shift") {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 20; ++k) {
    const auto model = testing::random_model(rng);
    const int n = 8 + static_cast<int>(rng() % 56);
    const double w = omega_min(model);
    for (double omega : {w, w + 0.5}) {
      const auto rep = dissipativity_check(model, build_grid(model.m(), n), {0.01, 0.1, 1.0, 10.0, 100.0}, omega,
                                           100, rng());
      CHECK(rep.max_ratio <= 1.0 + 1e-10);
      CHECK(rep.positivity_violations == 0);
    }
  }
}

TEST_CASE("shifts below the threshold are flagged") {
  const Model model(1.0, Coefficient::constant(0.0), Coefficient::constant(0.5), Coefficient::constant(0.25),
                    Kernel::constant(0.0), {1.0, 1.0, 0.0, 0.0, false});
  const auto rep = dissipativity_check(model, build_grid(1.0, 16), {1.0, 10.0}, omega_min(model) - 0.5, 100, 3);
  CHECK(rep.below_omega_min());
  CHECK(rep.omega_min == doctest::Approx(1.0));
}

TEST_CASE("dissipativity check is reproducible") {
  const auto model = testing::growth_model(0.1, 0.0);
  const auto grid = build_grid(1.0, 20);
  const auto a = dissipativity_check(model, grid, {1.0}, 0.0, 50, 99);
  const auto b = dissipativity_check(model, grid, {1.0}, 0.0, 50, 99);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.worst_entry == b.worst_entry);
}
