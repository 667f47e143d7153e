#include "sidewalk/perception.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace sidewalk {

double Observation::vx() const {
  return v_forw * std::cos(theta) - v_orth * std::sin(theta);
}

double Observation::vy() const {
  return v_forw * std::sin(theta) + v_orth * std::cos(theta);
}

Observation init_observation(const PedestrianState& truth) {
  return {truth.x, truth.y, std::max(truth.v_forw, 0.0), truth.v_orth, truth.phi};
}

Observation update_observation(const Observation& obs, const PedestrianState& truth,
                               RandomSource& rng, const ModelParams& p) {
  const double noise_scale = p.beta * std::sqrt(p.dt_sim);
  const double e1 = rng.normal();
  const double e2 = rng.normal();
  const double e3 = rng.normal();

  Observation next;
  next.x = truth.x;
  next.y = truth.y;
  next.v_forw = obs.v_forw + p.alpha * (truth.v_forw - obs.v_forw) + noise_scale * e1;
  next.v_orth = obs.v_orth + p.alpha * (truth.v_orth - obs.v_orth) + noise_scale * e2;
  next.theta = obs.theta + p.alpha * (truth.phi - obs.theta) + noise_scale * e3;
  next.v_forw = std::max(next.v_forw, 0.0);
  // Headings stay near the track axis; no wrap-around handling.
  assert(std::abs(next.theta) <= kPi + 0.5);
  return next;
}

}  // namespace sidewalk
