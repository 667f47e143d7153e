#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sidewalk/simulator.hpp"

using namespace sidewalk;

namespace {

bool same_trial(const TrialResult& a, const TrialResult& b) {
  if (a.end_state != b.end_state || a.passing_step != b.passing_step || a.steps() != b.steps()) {
    return false;
  }
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < a.steps(); ++k) {
      const auto& ra = a.traces[i][k];
      const auto& rb = b.traces[i][k];
      if (!(ra.state == rb.state) || ra.telemetry.risk != rb.telemetry.risk ||
          ra.telemetry.replanned != rb.telemetry.replanned ||
          ra.telemetry.plan_mean_x != rb.telemetry.plan_mean_x) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("built-in scenarios") {
    CHECK(scenario_names().size() == 5);
    const Scenario sym = make_scenario("symmetric");
    CHECK(sym.rho == std::array<double, 2>{0.65, 0.65});
    CHECK(sym.x_offset == std::array<double, 2>{0.0, 0.0});
    CHECK(sym.bias[0] == BeliefBias{});

    CHECK(make_scenario("different_sides").x_offset == std::array<double, 2>{0.1, -0.1});
    CHECK(make_scenario("different_risk_thresholds").rho == std::array<double, 2>{0.6, 0.7});

    const Scenario same = make_scenario("same_belief_bias");
    CHECK(same.bias[0] == BeliefBias{1.3, 0.7});
    CHECK(same.bias[1] == BeliefBias{1.3, 0.7});
    const Scenario diff = make_scenario("different_belief_bias");
    CHECK(diff.bias[0] == BeliefBias{1.3, 0.7});
    CHECK(diff.bias[1] == BeliefBias{0.7, 1.3});

    CHECK_THROWS_AS(make_scenario("crowded"), std::invalid_argument);
  }

  TEST_CASE("frame flip is an involution") {
    ModelParams p;
    const PedestrianState s{0.3, 2.0, 1.2, 1.1, -0.2, 0.1};
    const PedestrianState back = flip_frame(flip_frame(s, p), p);
    CHECK(back.x == doctest::Approx(s.x));
    CHECK(back.y == doctest::Approx(s.y));
    CHECK(std::cos(back.phi) == doctest::Approx(std::cos(s.phi)));
    CHECK(std::sin(back.phi) == doctest::Approx(std::sin(s.phi)));
    CHECK(flip_frame(s, p).v_orth == s.v_orth);
  }

  TEST_CASE("solo noise-free walk finishes straight") {
    ModelParams p;
    p.beta = 0.0;
    TrialOptions opt;
    opt.solo = true;
    const TrialResult r = run_trial(make_scenario("symmetric"), 1, p, opt);
    CHECK(r.end_state == EndState::kFinished);
    CHECK(r.steps() == 231);
    for (const auto& rec : r.traces[0]) {
      CHECK(std::abs(rec.state.x) < 1e-12);
      CHECK_FALSE(rec.telemetry.replanned);
    }
  }

  TEST_CASE("start states face each other") {
    ModelParams p;
    const TrialResult r = run_trial(make_scenario("different_sides"), 3, p);
    CHECK(r.initial[0].x == doctest::Approx(0.1));
    CHECK(r.initial[0].y == 0.0);
    CHECK(r.initial[0].phi == doctest::Approx(kPi / 2));
    CHECK(r.initial[1].x == doctest::Approx(-0.1));
    CHECK(r.initial[1].y == doctest::Approx(15.0));
    CHECK(std::sin(r.initial[1].phi) == doctest::Approx(-1.0));
    CHECK(r.initial[1].v_forw == 1.3);
  }

  TEST_CASE("equal seeds reproduce a trial") {
    ModelParams p;
    const Scenario s = make_scenario("symmetric");
    CHECK(same_trial(run_trial(s, 17, p), run_trial(s, 17, p)));
  }

  TEST_CASE("traces are aligned and terminate by the rules") {
    ModelParams p;
    for (const auto& name : scenario_names()) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const TrialResult r = run_trial(make_scenario(name), seed, p);
        REQUIRE(r.traces[0].size() == r.traces[1].size());
        CHECK(r.steps() <= std::lround(p.timeout / p.dt_sim));
        for (int k = 0; k < r.steps(); ++k) {
          const auto& a = r.traces[0][k].state;
          const auto& b = r.traces[1][k].state;
          CHECK(r.traces[0][k].telemetry.t == doctest::Approx((k + 1) * p.dt_sim));
          const double d = std::hypot(a.x - b.x, a.y - b.y);
          if (k + 1 < r.steps()) CHECK(d >= p.r_collision);
        }
        const auto& a = r.traces[0].back().state;
        const auto& b = r.traces[1].back().state;
        switch (r.end_state) {
          case EndState::kCollision:
            CHECK(std::hypot(a.x - b.x, a.y - b.y) < p.r_collision);
            break;
          case EndState::kFinished:
            CHECK((a.y > 15.0 || b.y < 0.0));
            break;
          case EndState::kOutOfBounds:
            CHECK((std::abs(a.x) > 1.25 || std::abs(b.x) > 1.25));
            break;
          case EndState::kTimeout:
            CHECK(r.steps() == std::lround(p.timeout / p.dt_sim));
            break;
        }
        if (r.passing_step) {
          const int k = *r.passing_step;
          CHECK(r.traces[0][k].state.y > r.traces[1][k].state.y);
          if (k > 0) CHECK(r.traces[0][k - 1].state.y <= r.traces[1][k - 1].state.y);
        }
      }
    }
  }

  TEST_CASE("offset starts pass cleanly") {
    ModelParams p;
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
      CHECK(run_trial(make_scenario("different_sides"), seed, p).end_state == EndState::kFinished);
    }
  }

  TEST_CASE("batch seeds are consecutive and order-stable") {
    ModelParams p;
    const Scenario s = make_scenario("different_risk_thresholds");
    const auto serial = run_batch(s, 4, 50, p, {}, 1);
    const auto parallel = run_batch(s, 4, 50, p, {}, 3);
    REQUIRE(serial.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(serial[i].seed == 50u + i);
      CHECK(same_trial(serial[i], parallel[i]));
    }
    CHECK(same_trial(run_batch(s, 1, 77, p).front(), run_trial(s, 77, p)));
    CHECK_THROWS_AS(run_batch(s, 0, 1, p), std::invalid_argument);
  }

  TEST_CASE("snapshots are taken at replan attempts") {
    ModelParams p;
    TrialOptions opt;
    opt.record_snapshots = true;
    const TrialResult r = run_trial(make_scenario("symmetric"), 5, p, opt);
    int replans = 0;
    for (int i = 0; i < 2; ++i) {
      for (const auto& rec : r.traces[i]) replans += rec.telemetry.replanned;
    }
    CHECK(static_cast<int>(r.snapshots.size()) == replans);
    for (const auto& s : r.snapshots) {
      CHECK(s.plan.size() == 28);
      CHECK(s.belief.size() == 28);
      CHECK(r.traces[s.pedestrian][s.step].telemetry.replanned);
    }
  }
}
