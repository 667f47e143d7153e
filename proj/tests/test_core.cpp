#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sidewalk/core.hpp"

using namespace sidewalk;

TEST_SUITE("core") {
  TEST_CASE("default parameters") {
    const ModelParams p = default_params();
    CHECK(p.dt_sim == 0.05);
    CHECK(p.dt_plan == 0.25);
    CHECK(p.horizon == 7.0);
    CHECK(p.v_init == 1.3);
    CHECK(p.lambda[1] == 100.0);
    CHECK(p.lambda[2] == 2.0);
    CHECK(p.lambda[3] == 5.0);
    CHECK(p.n_plan() == 28);
    CHECK(p.sim_steps_per_plan() == 5);
    CHECK(p.half_width() == 1.25);
    CHECK_NOTHROW(p.validate());
  }

  TEST_CASE("validation rejects broken invariants") {
    ModelParams p;
    p.gamma_c = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.retry_factor = 0.7;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.horizon = 7.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.dt_sim = -0.05;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }

  TEST_CASE("equal seeds give equal normal streams") {
    RandomSource a(42), b(42);
    const double a1 = normal_draw(a), a2 = normal_draw(a);
    CHECK(a1 != a2);
    CHECK(normal_draw(b) == a1);
    CHECK(normal_draw(b) == a2);
    for (int i = 0; i < 1000; ++i) CHECK(a.normal() == b.normal());
  }

  TEST_CASE("normal draws have unit variance") {
    RandomSource rng(7);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = rng.normal();
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
  }

  TEST_CASE("pedestrian streams of one trial differ") {
    auto a = RandomSource::for_pedestrian(5, 0);
    auto b = RandomSource::for_pedestrian(5, 1);
    CHECK(a.seed() != b.seed());
    CHECK(a.normal() != b.normal());
    CHECK(RandomSource::for_pedestrian(5, 0).seed() == a.seed());
  }

  TEST_CASE("plan shift mode names") {
    CHECK(to_string(PlanShiftMode::kPerSimStep) == "per_sim_step");
    CHECK(plan_shift_mode_from_string("per_plan_step") == PlanShiftMode::kPerPlanStep);
    CHECK_THROWS_AS(plan_shift_mode_from_string("sometimes"), std::invalid_argument);
  }
}
