#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "sidewalk/simulator.hpp"

namespace sidewalk {

/// Mean planned lateral position and the lateral position the plan starts
/// from, sampled at one plan-update instant.
struct PlanSample {
  double mean_plan_x = 0.0;
  double current_x = 0.0;
};

enum class LateralSide { kInside, kLeft, kRight };

/// Incremental switch counter. A switch is counted whenever the plan mean
/// leaves the dead band on the side opposite to the last side it left on
/// (the first exit counts too). Returns to the dead band change nothing.
class SwitchCounter {
 public:
  explicit SwitchCounter(double dead_band = 0.2) : dead_band_(dead_band) {}

  void observe(const PlanSample& s);
  int count() const { return count_; }
  std::optional<LateralSide> last_side() const { return last_side_; }

 private:
  double dead_band_;
  std::optional<LateralSide> last_side_;
  int count_ = 0;
};

LateralSide classify(const PlanSample& s, double dead_band);

int strategy_switches(std::span<const PlanSample> samples, double dead_band = 0.2);

/// Plan samples of one pedestrian up to the passing step (or the whole trace
/// if the pedestrians never passed), optionally truncated at `up_to_step`.
std::vector<PlanSample> plan_samples(const TrialResult& r, int pedestrian, const ModelParams& p,
                                     std::optional<int> up_to_step = std::nullopt);

struct TrialMetrics {
  std::array<int, 2> switches{};
  bool salsa = false;
  // Step index of each pedestrian's first replan attempt.
  std::array<std::optional<int>, 2> first_replan{};
};

TrialMetrics trial_metrics(const TrialResult& r, const ModelParams& p,
                           std::optional<int> up_to_step = std::nullopt);

/// Both pedestrians made at least two strategy switches before passing.
bool detect_salsa(const TrialResult& r, const ModelParams& p);
inline bool is_salsa(int switches_a, int switches_b) { return switches_a >= 2 && switches_b >= 2; }

struct ScenarioSummary {
  std::string scenario;
  int n_trials = 0;
  int finished = 0;
  int collided = 0;
  int out_of_bounds = 0;
  int timeout = 0;
  int salsas = 0;
  int collided_with_salsa = 0;
  // Per-pedestrian counts of 0, 1, 2 and >= 3 switches.
  std::array<int, 4> switch_histogram{};

  /// Histogram bucket holding the most pedestrians (lowest on ties).
  int histogram_mode() const;
  /// Share of pedestrians with two or more switches.
  double multi_switch_share() const;
};

ScenarioSummary summarize(std::span<const TrialResult> results, const ModelParams& p);

}  // namespace sidewalk
