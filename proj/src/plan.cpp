#include "sidewalk/plan.hpp"

#include <algorithm>

#include "sidewalk/dynamics.hpp"

namespace sidewalk {

double Plan::mean_x() const {
  if (waypoints.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& w : waypoints) sum += w.x;
  return sum / static_cast<double>(waypoints.size());
}

Plan make_plan(const PedestrianState& origin, std::vector<ControlInput> controls,
               const ModelParams& p, double created_at) {
  Plan plan;
  plan.waypoints = rollout(origin, controls, p.dt_plan);
  plan.controls = std::move(controls);
  plan.created_at = created_at;
  return plan;
}

Plan rebase_plan(const Plan& plan, const PedestrianState& origin, const ModelParams& p) {
  return make_plan(origin, plan.controls, p, plan.created_at);
}

Plan advance_plan(const Plan& plan, std::size_t steps) {
  if (steps == 0 || plan.controls.empty()) return plan;
  const std::size_t n = plan.controls.size();
  const std::size_t drop = std::min(steps, n);
  Plan out;
  out.created_at = plan.created_at;
  out.controls.assign(plan.controls.begin() + drop, plan.controls.end());
  out.waypoints.assign(plan.waypoints.begin() + drop, plan.waypoints.end());
  out.controls.resize(n, plan.controls.back());
  out.waypoints.resize(n, plan.waypoints.back());
  return out;
}

}  // namespace sidewalk
