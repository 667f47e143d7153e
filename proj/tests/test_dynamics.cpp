#include <doctest.h>

#include <cmath>
#include <vector>

#include "sidewalk/dynamics.hpp"

using namespace sidewalk;

namespace {
const PedestrianState kWalker{0.0, 0.0, kPi / 2, 1.3, 0.0, 0.0};
}

TEST_SUITE("dynamics") {
  TEST_CASE("input clamping") {
    CHECK(clamp_control({0, 0, 0}) == ControlInput{0, 0, 0});
    CHECK(clamp_control({3.0, -2.0, 4.0}) == ControlInput{2.0, -1.0, kPi});
    CHECK(clamp_control({2.0, 1.0, kPi}) == ControlInput{2.0, 1.0, kPi});
    CHECK(clamp_control({-9.0, 0.5, -9.0}) == ControlInput{-2.0, 0.5, -kPi});
  }

  TEST_CASE("zero input walks straight") {
    const auto s = step(kWalker, {}, 0.05);
    CHECK(s.y == doctest::Approx(0.065).epsilon(1e-12));
    CHECK(std::abs(s.x) < 1e-15);
    CHECK(s.phi == kWalker.phi);
    CHECK(s.v_forw == 1.3);
    CHECK(s.v_orth == 0.0);
    CHECK(s.omega == 0.0);
  }

  TEST_CASE("orthogonal axis points to the walker's left") {
    const auto s = step(kWalker, {0.0, 1.0, 0.0}, 0.05);
    CHECK(s.v_orth == doctest::Approx(0.05));
    CHECK(s.x == doctest::Approx(-0.0025).epsilon(1e-9));
  }

  TEST_CASE("angular acceleration integrates semi-implicitly") {
    const auto s = step(kWalker, {0.0, 0.0, kPi}, 0.05);
    CHECK(s.omega == doctest::Approx(0.05 * kPi));
    CHECK(s.phi == doctest::Approx(kPi / 2 + 0.05 * 0.05 * kPi));
  }

  TEST_CASE("straight rollout over the horizon") {
    const std::vector<ControlInput> u(28);
    const auto states = rollout(kWalker, u, 0.25);
    REQUIRE(states.size() == 28);
    CHECK(states.back().y == doctest::Approx(9.1));
    for (const auto& s : states) CHECK(std::abs(s.x) < 1e-12);
  }

  TEST_CASE("single-control rollout equals one step") {
    const ControlInput u{0.4, -0.3, 0.2};
    const std::vector<ControlInput> one{u};
    CHECK(rollout(kWalker, one, 0.25).front() == step(kWalker, u, 0.25));
  }

  TEST_CASE("fine and coarse integration differ by the semi-implicit lag") {
    const ControlInput u{0.8, 0.5, 0.0};
    PedestrianState fine = kWalker;
    for (int i = 0; i < 5; ++i) fine = step(fine, u, 0.05);
    const PedestrianState coarse = step(kWalker, u, 0.25);
    // coarse moves a*0.25^2, fine sums a*0.05^2*(1+..+5)
    const double gap = std::hypot(0.8, 0.5) * (0.0625 - 0.0025 * 15);
    CHECK(std::hypot(fine.x - coarse.x, fine.y - coarse.y) == doctest::Approx(gap).epsilon(1e-9));
    CHECK(fine.v_forw == doctest::Approx(coarse.v_forw).epsilon(1e-12));
  }
}
