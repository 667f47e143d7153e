#pragma once

#include "sidewalk/core.hpp"

namespace sidewalk {

/// What one pedestrian believes about the other's current motion. Position is
/// observed exactly; velocities and heading lag the truth and carry noise.
struct Observation {
  double x = 0.0;
  double y = 0.0;
  double v_forw = 0.0;
  double v_orth = 0.0;
  double theta = 0.0;

  /// World-frame velocity implied by the observed body velocities and heading.
  double vx() const;
  double vy() const;

  bool operator==(const Observation&) const = default;
};

Observation init_observation(const PedestrianState& truth);

/// First-order tracking of the truth plus Brownian noise. Draws exactly three
/// normals (forward, orthogonal, heading) in that order.
Observation update_observation(const Observation& obs, const PedestrianState& truth,
                               RandomSource& rng, const ModelParams& p);

}  // namespace sidewalk
