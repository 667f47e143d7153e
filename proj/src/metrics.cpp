#include "sidewalk/metrics.hpp"

#include <algorithm>

namespace sidewalk {

LateralSide classify(const PlanSample& s, double dead_band) {
  if (s.mean_plan_x < s.current_x - dead_band) return LateralSide::kLeft;
  if (s.mean_plan_x > s.current_x + dead_band) return LateralSide::kRight;
  return LateralSide::kInside;
}

void SwitchCounter::observe(const PlanSample& s) {
  const LateralSide side = classify(s, dead_band_);
  if (side == LateralSide::kInside) return;
  if (last_side_ != side) {
    ++count_;
    last_side_ = side;
  }
}

int strategy_switches(std::span<const PlanSample> samples, double dead_band) {
  SwitchCounter counter(dead_band);
  for (const auto& s : samples) counter.observe(s);
  return counter.count();
}

std::vector<PlanSample> plan_samples(const TrialResult& r, int pedestrian, const ModelParams& p,
                                     std::optional<int> up_to_step) {
  const auto& trace = r.traces[pedestrian];
  int last = static_cast<int>(trace.size()) - 1;
  if (r.passing_step) last = std::min(last, *r.passing_step);
  if (up_to_step) last = std::min(last, *up_to_step);

  std::vector<PlanSample> out;
  for (int k = 0; k <= last; ++k) {
    if (!is_plan_tick(k, p)) continue;
    out.push_back({trace[k].telemetry.plan_mean_x, trace[k].telemetry.origin_x});
  }
  return out;
}

TrialMetrics trial_metrics(const TrialResult& r, const ModelParams& p,
                           std::optional<int> up_to_step) {
  TrialMetrics m;
  for (int i = 0; i < 2; ++i) {
    m.switches[i] = strategy_switches(plan_samples(r, i, p, up_to_step), p.dead_band);
    const auto& trace = r.traces[i];
    for (int k = 0; k < static_cast<int>(trace.size()); ++k) {
      if (trace[k].telemetry.replanned) {
        m.first_replan[i] = k;
        break;
      }
    }
  }
  m.salsa = is_salsa(m.switches[0], m.switches[1]);
  return m;
}

bool detect_salsa(const TrialResult& r, const ModelParams& p) {
  return trial_metrics(r, p).salsa;
}

int ScenarioSummary::histogram_mode() const {
  return static_cast<int>(std::max_element(switch_histogram.begin(), switch_histogram.end()) -
                          switch_histogram.begin());
}

double ScenarioSummary::multi_switch_share() const {
  const int total = switch_histogram[0] + switch_histogram[1] + switch_histogram[2] +
                    switch_histogram[3];
  return total == 0 ? 0.0 : static_cast<double>(switch_histogram[2] + switch_histogram[3]) / total;
}

ScenarioSummary summarize(std::span<const TrialResult> results, const ModelParams& p) {
  ScenarioSummary s;
  if (!results.empty()) s.scenario = results.front().scenario;
  s.n_trials = static_cast<int>(results.size());
  for (const auto& r : results) {
    switch (r.end_state) {
      case EndState::kFinished: ++s.finished; break;
      case EndState::kCollision: ++s.collided; break;
      case EndState::kOutOfBounds: ++s.out_of_bounds; break;
      case EndState::kTimeout: ++s.timeout; break;
    }
    const TrialMetrics m = trial_metrics(r, p);
    if (m.salsa) {
      ++s.salsas;
      if (r.end_state == EndState::kCollision) ++s.collided_with_salsa;
    }
    for (int c : m.switches) ++s.switch_histogram[std::min(c, 3)];
  }
  return s;
}

}  // namespace sidewalk
