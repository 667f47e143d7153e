#pragma once

#include <span>
#include <vector>

#include "sidewalk/core.hpp"

namespace sidewalk {

/// Clips each acceleration component to its model limit.
ControlInput clamp_control(const ControlInput& u);

/// One semi-implicit Euler step: body-frame velocities first, then heading,
/// then world position from the updated velocities.
PedestrianState step(const PedestrianState& s, const ControlInput& u, double dt);

/// states[k] is the state after applying controls[0..k].
std::vector<PedestrianState> rollout(const PedestrianState& s0,
                                     std::span<const ControlInput> controls, double dt);

}  // namespace sidewalk
