#pragma once

#include <array>
#include <vector>

#include "sidewalk/core.hpp"
#include "sidewalk/perception.hpp"

namespace sidewalk {

struct BeliefComponent {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
};

enum class Side { kLeft, kRight };

/// Gaussian mixture over the other pedestrian's lateral position at one
/// future instant. Components are ordered (continue, left, right).
struct BeliefPoint {
  static constexpr int kContinue = 0;
  static constexpr int kLeft = 1;
  static constexpr int kRight = 2;

  double t_b = 0.0;
  double y_b = 0.0;
  std::array<BeliefComponent, 3> components{};

  double total_weight() const;
};

/// Multipliers on the left/right passing weights, modelling a passing norm.
struct BeliefBias {
  double m_left = 1.0;
  double m_right = 1.0;

  bool operator==(const BeliefBias&) const = default;
};

struct SideWeights {
  double continue_ = 0.0;
  double left = 0.0;
  double right = 0.0;
};

struct BeliefLongitude {
  double t_b;
  double y_b;
};

/// -1 when the ego's left is the -x direction (walking toward +y), +1 otherwise.
double left_sign(const PedestrianState& ego);

/// Time offsets k*dt_plan (k = 1..n_plan) and the other's extrapolated y there.
std::vector<BeliefLongitude> belief_longitudes(const Observation& obs, const ModelParams& p);

BeliefComponent continue_component(const Observation& obs, double t_b, const ModelParams& p);

SideWeights side_weights(const PedestrianState& ego, const Observation& obs,
                         const ModelParams& p, const BeliefBias& bias);

/// Mean and spread of the pass-on-`side` component; `gamma` is left at zero
/// because the weights come from side_weights().
BeliefComponent side_component(const PedestrianState& ego, const Observation& obs, double t_b,
                               Side side, const ModelParams& p);

std::vector<BeliefPoint> build_belief(const PedestrianState& ego, const Observation& obs,
                                      const ModelParams& p, const BeliefBias& bias);

/// Standard normal cumulative distribution function.
double normal_cdf(double z);

/// Mixture probability mass on (lo, hi).
double prob_in_interval(const BeliefPoint& bp, double lo, double hi);

}  // namespace sidewalk
