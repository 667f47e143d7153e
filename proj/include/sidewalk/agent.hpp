#pragma once

#include <optional>
#include <vector>

#include "sidewalk/belief.hpp"
#include "sidewalk/perception.hpp"
#include "sidewalk/plan.hpp"
#include "sidewalk/planner.hpp"

namespace sidewalk {

struct AgentConfig {
  double rho = 0.65;
  BeliefBias bias{};
  double initial_x_offset = 0.0;
};

enum class AgentMode { kNormal, kRecovering };

enum class ReplanOutcome { kNone, kSuccess, kInfeasible };

/// Everything a pedestrian carries from one tick to the next.
struct AgentMemory {
  AgentMode mode = AgentMode::kNormal;
  Observation obs;
  Plan plan;
  int steps_on_first_control = 0;
  RandomSource rng{0};
};

/// One record per agent per simulation step.
struct Telemetry {
  double t = 0.0;
  double risk = 0.0;
  double threshold = 0.0;
  bool replanned = false;
  double cap = 0.0;
  ReplanOutcome outcome = ReplanOutcome::kNone;
  AgentMode mode = AgentMode::kNormal;
  int iterations = 0;
  // Lateral mean of the active plan after this tick's replan decision, and the
  // lateral position the plan starts from.
  double plan_mean_x = 0.0;
  double origin_x = 0.0;
};

struct TickResult {
  ControlInput control;
  Telemetry telemetry;
  // Belief used for the replan decision; only kept when a replan was attempted.
  std::optional<std::vector<BeliefPoint>> belief;
};

AgentMemory init_agent(const PedestrianState& self, const PedestrianState& other,
                       RandomSource rng, const ModelParams& p);

/// One 20 Hz step of the observe / believe / assess / replan loop. Both states
/// are expressed in the ego's own track frame, where the ego walks toward +y.
TickResult agent_tick(const PedestrianState& self, const PedestrianState& other,
                      AgentMemory& memory, const AgentConfig& cfg, const ModelParams& p,
                      double t);

const char* to_string(AgentMode mode);
const char* to_string(ReplanOutcome outcome);

}  // namespace sidewalk
