#include "sidewalk/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace sidewalk {

ControlInput clamp_control(const ControlInput& u) {
  return {std::clamp(u.a_forw, -kMaxForwardAccel, kMaxForwardAccel),
          std::clamp(u.a_orth, -kMaxOrthogonalAccel, kMaxOrthogonalAccel),
          std::clamp(u.omega_dot, -kMaxAngularAccel, kMaxAngularAccel)};
}

PedestrianState step(const PedestrianState& s, const ControlInput& u, double dt) {
  PedestrianState n;
  n.v_forw = s.v_forw + u.a_forw * dt;
  n.v_orth = s.v_orth + u.a_orth * dt;
  n.omega = s.omega + u.omega_dot * dt;
  n.phi = s.phi + n.omega * dt;
  const double c = std::cos(n.phi);
  const double si = std::sin(n.phi);
  n.x = s.x + dt * (n.v_forw * c - n.v_orth * si);
  n.y = s.y + dt * (n.v_forw * si + n.v_orth * c);
  return n;
}

std::vector<PedestrianState> rollout(const PedestrianState& s0,
                                     std::span<const ControlInput> controls, double dt) {
  std::vector<PedestrianState> states;
  states.reserve(controls.size());
  PedestrianState s = s0;
  for (const auto& u : controls) {
    s = step(s, u, dt);
    states.push_back(s);
  }
  return states;
}

}  // namespace sidewalk
