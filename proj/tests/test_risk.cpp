#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sidewalk/dynamics.hpp"
#include "sidewalk/risk.hpp"

using namespace sidewalk;

namespace {

BeliefPoint concentrated(double mu, double sigma, double t_b, double y_b) {
  BeliefPoint bp;
  bp.t_b = t_b;
  bp.y_b = y_b;
  for (auto& c : bp.components) c = {mu, sigma, 1.0 / 3.0};
  return bp;
}

std::vector<PedestrianState> straight_plan(const ModelParams& p) {
  const std::vector<ControlInput> u(p.n_plan());
  return rollout({0.0, 0.0, kPi / 2, 1.3, 0.0, 0.0}, u, p.dt_plan);
}

}  // namespace

TEST_SUITE("risk") {
  TEST_CASE("longitudinal factor") {
    ModelParams p;
    CHECK(longitudinal_factor(0.0, p) == 1.0);
    CHECK(longitudinal_factor(0.6, p) == doctest::Approx(0.36788).epsilon(1e-5));
    CHECK(longitudinal_factor(-0.6, p) == longitudinal_factor(0.6, p));
  }

  TEST_CASE("bounds risk is negligible mid-sidewalk") {
    ModelParams p;
    CHECK(bounds_risk(0.0, 0.25, p) < 1e-6);
  }

  TEST_CASE("bounds risk is close to one at the edge") {
    ModelParams p;
    // The sigmoid midpoint sits delta_x inside each edge.
    const double expected = 0.5 * (1.0 + std::tanh(1.5));
    CHECK(bounds_risk(-1.25, 1e-9, p) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(bounds_risk(1.25, 1e-9, p) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(bounds_risk(-1.25, 1e-9, p) > 0.9);
    CHECK(bounds_risk(-1.1, 1e-9, p) == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("bounds risk factorises over time") {
    ModelParams p;
    for (double x : {-1.3, -0.9, 0.0, 1.05, 1.2}) {
      CHECK(bounds_risk(x, 7.0, p) ==
            doctest::Approx(bounds_risk(x, 0.25, p) * std::exp(-1.0) / std::exp(-0.25 / 7.0)));
    }
  }

  TEST_CASE("straight plan against a far-lane belief has low risk") {
    ModelParams p;
    const auto plan = straight_plan(p);
    std::vector<BeliefPoint> belief;
    for (std::size_t k = 0; k < plan.size(); ++k) {
      belief.push_back(concentrated(1.0, 0.05, (k + 1) * p.dt_plan, plan[k].y));
    }
    CHECK(perceived_risk(plan, belief, p).max_total < 0.1);
  }

  TEST_CASE("plan through a sharp belief mean is nearly certain contact") {
    ModelParams p;
    const BeliefPoint bp = concentrated(0.0, 0.05, 1.0, 2.0);
    CHECK(proximity_risk(0.0, 2.0, bp, p) > 0.99);
  }

  TEST_CASE("perceived risk reports the maximum point") {
    ModelParams p;
    const auto plan = straight_plan(p);
    std::vector<BeliefPoint> belief;
    for (std::size_t k = 0; k < plan.size(); ++k) {
      belief.push_back(concentrated(0.0, 0.1, (k + 1) * p.dt_plan, plan[k].y + (k == 9 ? 0.0 : 5.0)));
    }
    const auto r = perceived_risk(plan, belief, p);
    CHECK(r.argmax_index == 9);
    CHECK(r.max_total == doctest::Approx(r.per_point[9].total));
    CHECK(r.per_point[9].total == doctest::Approx(r.per_point[9].close + r.per_point[9].bounds));
  }

  TEST_CASE("mismatched lengths are a contract violation") {
    ModelParams p;
    const auto plan = straight_plan(p);
    std::vector<BeliefPoint> belief(3);
    CHECK_THROWS_AS(perceived_risk(plan, belief, p), std::logic_error);
  }

  TEST_CASE("proximity risk does not grow with longitudinal distance") {
    ModelParams p;
    const BeliefPoint bp = concentrated(0.1, 0.2, 1.0, 5.0);
    double prev = 2.0;
    for (double dy = 0.0; dy < 3.0; dy += 0.1) {
      const double r = proximity_risk(0.0, 5.0 - dy, bp, p);
      CHECK(r <= prev);
      prev = r;
    }
  }

  TEST_CASE("bounds risk does not fall moving outward") {
    ModelParams p;
    double prev = 0.0;
    for (double x = 0.0; x < 1.6; x += 0.05) {
      CHECK(bounds_risk(x, 0.5, p) >= prev);
      CHECK(bounds_risk(-x, 0.5, p) == doctest::Approx(bounds_risk(x, 0.5, p)).epsilon(1e-12));
      prev = bounds_risk(x, 0.5, p);
    }
  }

  TEST_CASE("point gradient agrees with the point risk") {
    ModelParams p;
    const BeliefPoint bp = concentrated(0.2, 0.15, 1.5, 3.0);
    const auto g = point_risk_with_gradient(0.05, 2.7, bp, p);
    CHECK(g.total == doctest::Approx(proximity_risk(0.05, 2.7, bp, p) + bounds_risk(0.05, 1.5, p)));
  }
}
