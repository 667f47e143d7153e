#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sidewalk/belief.hpp"
#include "sidewalk/plan.hpp"

namespace sidewalk {

/// What the plan cost measures deviations against.
struct CostReference {
  double v_forw = 1.3;
  double theta = kPi / 2;
};

/// Quadratic comfort/progress cost summed over the plan steps. Accelerations
/// enter normalized by their limits.
double plan_cost(const Plan& plan, const CostReference& ref, const ModelParams& p);

/// Cost and its gradient with respect to the controls (3 per step, ordered
/// a_forw, a_orth, omega_dot) for the plan rolled out from `origin`.
double plan_cost_gradient(const PedestrianState& origin, std::span<const ControlInput> controls,
                          const CostReference& ref, const ModelParams& p,
                          std::vector<double>& grad);

/// The unconstrained optimum from a track-aligned start at reference speed:
/// all-zero controls.
Plan initial_plan(const PedestrianState& s0, const ModelParams& p);

/// Braking law a = -2v on every velocity component, re-evaluated per plan step.
Plan shifted_emergency_plan(const PedestrianState& s, const ModelParams& p);

struct ReplanResult {
  std::optional<Plan> plan;  // empty when infeasible
  int iterations = 0;
  double max_risk = 0.0;     // of the returned plan, or the least-violating iterate
  double cost = 0.0;

  bool feasible() const { return plan.has_value(); }
};

/// Minimizes plan_cost subject to perceived risk <= risk_cap against a frozen
/// belief. Augmented Lagrangian over one inequality per horizon point, inner
/// projected L-BFGS steps.
ReplanResult replan(const PedestrianState& s, std::span<const BeliefPoint> belief,
                    double risk_cap, const Plan& warm_start, const CostReference& ref,
                    const ModelParams& p);

}  // namespace sidewalk
