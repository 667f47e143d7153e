#include "sidewalk/risk.hpp"

#include <cmath>
#include <stdexcept>

namespace sidewalk {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double sech2(double a) {
  const double t = std::tanh(a);
  return 1.0 - t * t;
}

}  // namespace

double longitudinal_factor(double dy, const ModelParams& p) {
  return std::exp(-dy * dy / p.fy_denominator);
}

double proximity_risk(double x_e, double y_e, const BeliefPoint& bp, const ModelParams& p) {
  return longitudinal_factor(y_e - bp.y_b, p) *
         prob_in_interval(bp, x_e - p.r_com, x_e + p.r_com);
}

double bounds_risk(double x_e, double t_b, const ModelParams& p) {
  const double f_t = std::exp(-t_b / p.horizon);
  const double lo = -p.half_width() + p.delta_x;
  const double hi = p.half_width() - p.delta_x;
  return f_t * (0.5 * (1.0 - std::tanh(p.eta * (x_e - lo))) +
                0.5 * (1.0 + std::tanh(p.eta * (x_e - hi))));
}

PointRiskGrad point_risk_with_gradient(double x_e, double y_e, const BeliefPoint& bp,
                                       const ModelParams& p) {
  const double dy = y_e - bp.y_b;
  const double f_y = longitudinal_factor(dy, p);

  double lateral = 0.0;
  double d_lateral = 0.0;
  for (const auto& c : bp.components) {
    const double z_hi = (x_e + p.r_com - c.mu) / c.sigma;
    const double z_lo = (x_e - p.r_com - c.mu) / c.sigma;
    lateral += c.gamma * (normal_cdf(z_hi) - normal_cdf(z_lo));
    d_lateral += c.gamma * (normal_pdf(z_hi) - normal_pdf(z_lo)) / c.sigma;
  }

  const double f_t = std::exp(-bp.t_b / p.horizon);
  const double a = p.eta * (x_e - (-p.half_width() + p.delta_x));
  const double b = p.eta * (x_e - (p.half_width() - p.delta_x));
  const double bounds = f_t * (0.5 * (1.0 - std::tanh(a)) + 0.5 * (1.0 + std::tanh(b)));
  const double d_bounds = f_t * 0.5 * p.eta * (sech2(b) - sech2(a));

  PointRiskGrad g;
  g.total = f_y * lateral + bounds;
  g.d_x = f_y * d_lateral + d_bounds;
  g.d_y = -2.0 * dy / p.fy_denominator * f_y * lateral;
  return g;
}

RiskBreakdown perceived_risk(std::span<const PedestrianState> waypoints,
                             std::span<const BeliefPoint> belief, const ModelParams& p) {
  if (waypoints.size() != belief.size()) {
    throw std::logic_error("perceived_risk: plan and belief lengths differ");
  }
  RiskBreakdown r;
  r.per_point.reserve(waypoints.size());
  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    PointRisk pr;
    pr.close = proximity_risk(waypoints[k].x, waypoints[k].y, belief[k], p);
    pr.bounds = bounds_risk(waypoints[k].x, belief[k].t_b, p);
    pr.total = pr.close + pr.bounds;
    if (k == 0 || pr.total > r.max_total) {
      r.max_total = pr.total;
      r.argmax_index = static_cast<int>(k);
    }
    r.per_point.push_back(pr);
  }
  return r;
}

RiskBreakdown perceived_risk(const Plan& plan, std::span<const BeliefPoint> belief,
                             const ModelParams& p) {
  return perceived_risk(std::span<const PedestrianState>(plan.waypoints), belief, p);
}

}  // namespace sidewalk
