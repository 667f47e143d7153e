#pragma once

#include <span>
#include <vector>

#include "sidewalk/belief.hpp"
#include "sidewalk/plan.hpp"

namespace sidewalk {

struct PointRisk {
  double close = 0.0;
  double bounds = 0.0;
  double total = 0.0;
};

struct RiskBreakdown {
  std::vector<PointRisk> per_point;
  double max_total = 0.0;
  int argmax_index = 0;
};

/// Longitudinal attenuation exp(-dy^2 / fy_denominator).
double longitudinal_factor(double dy, const ModelParams& p);

/// Chance the other enters the ego's comfort range, attenuated by the
/// longitudinal gap between the plan point and the belief point.
double proximity_risk(double x_e, double y_e, const BeliefPoint& bp, const ModelParams& p);

/// Two sigmoids, one per sidewalk edge, centered delta_x inside each edge and
/// discounted by exp(-t_b / horizon).
double bounds_risk(double x_e, double t_b, const ModelParams& p);

/// Per-point risk and its partial derivatives with respect to the planned
/// position. Used by the optimizer.
struct PointRiskGrad {
  double total = 0.0;
  double d_x = 0.0;
  double d_y = 0.0;
};
PointRiskGrad point_risk_with_gradient(double x_e, double y_e, const BeliefPoint& bp,
                                       const ModelParams& p);

/// Sums both contributions per plan/belief pair and takes the maximum.
/// The waypoint and belief sequences must have equal length.
RiskBreakdown perceived_risk(std::span<const PedestrianState> waypoints,
                             std::span<const BeliefPoint> belief, const ModelParams& p);
RiskBreakdown perceived_risk(const Plan& plan, std::span<const BeliefPoint> belief,
                             const ModelParams& p);

}  // namespace sidewalk
