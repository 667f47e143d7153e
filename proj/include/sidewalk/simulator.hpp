#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sidewalk/agent.hpp"

namespace sidewalk {

/// Two-pedestrian encounter setup. Index 0 starts at y = 0 walking toward +y,
/// index 1 starts at the far end walking toward -y. Offsets are world x.
struct Scenario {
  std::string name;
  std::array<double, 2> rho{0.65, 0.65};
  std::array<double, 2> x_offset{0.0, 0.0};
  std::array<BeliefBias, 2> bias{};

  AgentConfig agent_config(int i) const { return {rho[i], bias[i], x_offset[i]}; }
};

/// Names of the built-in scenarios, in reporting order.
const std::vector<std::string>& scenario_names();

/// Built-in scenario by name; throws std::invalid_argument for unknown names.
Scenario make_scenario(const std::string& name);

enum class EndState { kFinished, kCollision, kOutOfBounds, kTimeout };

const char* to_string(EndState s);
EndState end_state_from_string(const std::string& s);

/// State after one simulation step plus the telemetry of the decision that
/// produced it, in world coordinates.
struct StepRecord {
  PedestrianState state;
  Telemetry telemetry;
};

/// Plan and belief captured whenever a pedestrian attempts a replan.
struct Snapshot {
  int step = 0;
  int pedestrian = 0;
  double t = 0.0;
  ReplanOutcome outcome = ReplanOutcome::kNone;
  std::vector<PedestrianState> plan;  // world frame
  std::vector<BeliefPoint> belief;    // world frame
};

struct TrialResult {
  std::string scenario;
  std::uint64_t seed = 0;
  EndState end_state = EndState::kTimeout;
  std::array<PedestrianState, 2> initial{};
  std::array<std::vector<StepRecord>, 2> traces;
  std::optional<int> passing_step;
  std::vector<Snapshot> snapshots;

  int steps() const { return static_cast<int>(traces[0].size()); }
};

struct TrialOptions {
  bool record_snapshots = false;
  // Walk pedestrian 0 alone; the other is parked far beyond the sidewalk.
  bool solo = false;
};

/// Rows with this index are the instants at which plan-level metrics sample
/// the active plan (the 4 Hz plan cadence).
bool is_plan_tick(int step, const ModelParams& p);

/// Maps a state between the world frame and the track frame of the pedestrian
/// starting at the far end (a half turn about the sidewalk center).
PedestrianState flip_frame(const PedestrianState& s, const ModelParams& p);

TrialResult run_trial(const Scenario& scenario, std::uint64_t seed, const ModelParams& p,
                      const TrialOptions& options = {});

/// Seeds base_seed .. base_seed + n_trials - 1, results in seed order.
/// jobs = 0 uses the available hardware parallelism.
std::vector<TrialResult> run_batch(const Scenario& scenario, int n_trials,
                                   std::uint64_t base_seed, const ModelParams& p,
                                   const TrialOptions& options = {}, unsigned jobs = 1);

}  // namespace sidewalk
