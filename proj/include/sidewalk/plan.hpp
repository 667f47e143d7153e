#pragma once

#include <vector>

#include "sidewalk/core.hpp"

namespace sidewalk {

/// Deterministic future trajectory: controls at dt_plan spacing and the states
/// they produce. waypoints[k] is reached at t_b = (k + 1) * dt_plan after the
/// plan's origin state.
struct Plan {
  std::vector<ControlInput> controls;
  std::vector<PedestrianState> waypoints;
  double created_at = 0.0;

  std::size_t size() const { return controls.size(); }
  double t_b(std::size_t k, const ModelParams& p) const { return (k + 1) * p.dt_plan; }
  /// Arithmetic mean of the planned lateral positions.
  double mean_x() const;
};

/// Builds a plan whose waypoints are the rollout of `controls` from `origin`.
Plan make_plan(const PedestrianState& origin, std::vector<ControlInput> controls,
               const ModelParams& p, double created_at = 0.0);

/// Same controls, waypoints re-derived from a new origin state.
Plan rebase_plan(const Plan& plan, const PedestrianState& origin, const ModelParams& p);

/// Drops the first `steps` entries and pads with copies of the final
/// control/waypoint pair so the length is unchanged.
Plan advance_plan(const Plan& plan, std::size_t steps);

}  // namespace sidewalk
