#include "sidewalk/belief.hpp"

#include <algorithm>
#include <cmath>

namespace sidewalk {

double BeliefPoint::total_weight() const {
  return components[0].gamma + components[1].gamma + components[2].gamma;
}

double left_sign(const PedestrianState& ego) { return std::sin(ego.phi) >= 0.0 ? -1.0 : 1.0; }

std::vector<BeliefLongitude> belief_longitudes(const Observation& obs, const ModelParams& p) {
  const int n = p.n_plan();
  const double vy = obs.vy();
  std::vector<BeliefLongitude> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const double t_b = k * p.dt_plan;
    out.push_back({t_b, obs.y + vy * t_b});
  }
  return out;
}

BeliefComponent continue_component(const Observation& obs, double t_b, const ModelParams& p) {
  BeliefComponent c;
  c.mu = obs.x + obs.vx() * t_b;
  c.sigma = std::max(0.5 * (p.a_e / 3.0) * t_b * t_b, p.sigma_floor);
  c.gamma = p.gamma_c;
  return c;
}

SideWeights side_weights(const PedestrianState& ego, const Observation& obs,
                         const ModelParams& p, const BeliefBias& bias) {
  const double side_mass = 1.0 - p.gamma_c;
  const double dx = obs.x - ego.x;
  const double dy = obs.y - ego.y;
  if (dx == 0.0 && dy == 0.0) {
    return {p.gamma_c, 0.5 * side_mass, 0.5 * side_mass};
  }

  const double ls = left_sign(ego);
  // Lateral offset of the other toward the ego's right, and the other's
  // side-stepping velocity toward the ego's left.
  const double offset_right = -ls * dx;
  const double v_toward_left = obs.v_orth * (-std::sin(obs.theta)) * ls;

  // pi/2 when straight ahead, toward 0 when the other is off to the right.
  const double bearing = std::atan2(p.zeta * std::abs(dy), offset_right);
  double left = side_mass * (0.5 + (bearing - 0.5 * kPi) / kPi + v_toward_left);
  left = std::clamp(left, 0.0, side_mass);
  double right = side_mass - left;

  left *= bias.m_left;
  right *= bias.m_right;
  if (p.renormalize_bias) {
    const double sum = left + right;
    left = side_mass * left / sum;
    right = side_mass * right / sum;
  }
  return {p.gamma_c, left, right};
}

BeliefComponent side_component(const PedestrianState& ego, const Observation& obs, double t_b,
                               Side side, const ModelParams& p) {
  const double ls = left_sign(ego);
  const double dir = side == Side::kLeft ? ls : -ls;
  const double x_ext = continue_component(obs, t_b, p).mu;

  BeliefComponent c;
  c.mu = std::abs(x_ext - ego.x) < p.r_com ? ego.x + dir * p.r_com : x_ext;
  const double bound = dir * p.half_width();
  c.sigma = std::max((std::abs(bound - ego.x) - p.r_com) / 6.0, p.sigma_floor);
  return c;
}

std::vector<BeliefPoint> build_belief(const PedestrianState& ego, const Observation& obs,
                                      const ModelParams& p, const BeliefBias& bias) {
  const SideWeights w = side_weights(ego, obs, p, bias);
  const auto longitudes = belief_longitudes(obs, p);
  std::vector<BeliefPoint> belief;
  belief.reserve(longitudes.size());
  for (const auto& [t_b, y_b] : longitudes) {
    BeliefPoint bp;
    bp.t_b = t_b;
    bp.y_b = y_b;
    bp.components[BeliefPoint::kContinue] = continue_component(obs, t_b, p);
    bp.components[BeliefPoint::kLeft] = side_component(ego, obs, t_b, Side::kLeft, p);
    bp.components[BeliefPoint::kRight] = side_component(ego, obs, t_b, Side::kRight, p);
    bp.components[BeliefPoint::kContinue].gamma = w.continue_;
    bp.components[BeliefPoint::kLeft].gamma = w.left;
    bp.components[BeliefPoint::kRight].gamma = w.right;
    belief.push_back(bp);
  }
  return belief;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 * 0.5); }

double prob_in_interval(const BeliefPoint& bp, double lo, double hi) {
  double total = 0.0;
  for (const auto& c : bp.components) {
    total += c.gamma * (normal_cdf((hi - c.mu) / c.sigma) - normal_cdf((lo - c.mu) / c.sigma));
  }
  return total;
}

}  // namespace sidewalk
