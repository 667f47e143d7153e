#include "sidewalk/simulator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sidewalk/dynamics.hpp"

namespace sidewalk {
namespace {

constexpr double kParkedDistance = 1e4;

BeliefPoint flip_belief(const BeliefPoint& bp, const ModelParams& p) {
  BeliefPoint out = bp;
  out.y_b = p.sidewalk_length - bp.y_b;
  for (auto& c : out.components) c.mu = -c.mu;
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"symmetric", "different_sides",
                                              "different_risk_thresholds", "same_belief_bias",
                                              "different_belief_bias"};
  return names;
}

Scenario make_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  const BeliefBias expect_left{1.3, 0.7};
  const BeliefBias expect_right{0.7, 1.3};
  if (name == "symmetric") {
  } else if (name == "different_sides") {
    s.x_offset = {0.1, -0.1};
  } else if (name == "different_risk_thresholds") {
    s.rho = {0.6, 0.7};
  } else if (name == "same_belief_bias") {
    s.bias = {expect_left, expect_left};
  } else if (name == "different_belief_bias") {
    s.bias = {expect_left, expect_right};
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  return s;
}

const char* to_string(EndState s) {
  switch (s) {
    case EndState::kFinished: return "finished";
    case EndState::kCollision: return "collision";
    case EndState::kOutOfBounds: return "out_of_bounds";
    case EndState::kTimeout: return "timeout";
  }
  return "timeout";
}

EndState end_state_from_string(const std::string& s) {
  if (s == "finished") return EndState::kFinished;
  if (s == "collision") return EndState::kCollision;
  if (s == "out_of_bounds") return EndState::kOutOfBounds;
  if (s == "timeout") return EndState::kTimeout;
  throw std::invalid_argument("unknown end state: " + s);
}

bool is_plan_tick(int step, const ModelParams& p) { return step % p.sim_steps_per_plan() == 0; }

PedestrianState flip_frame(const PedestrianState& s, const ModelParams& p) {
  PedestrianState out = s;
  out.x = -s.x;
  out.y = p.sidewalk_length - s.y;
  out.phi = s.phi - kPi;
  return out;
}

TrialResult run_trial(const Scenario& scenario, std::uint64_t seed, const ModelParams& p,
                      const TrialOptions& options) {
  TrialResult result;
  result.scenario = scenario.name;
  result.seed = seed;

  // Each pedestrian is simulated in its own track frame, in which it starts at
  // y = 0 heading +y. The far-end pedestrian's world offset flips sign there.
  std::array<PedestrianState, 2> ego{};
  for (int i = 0; i < 2; ++i) {
    ego[i].x = i == 0 ? scenario.x_offset[0] : -scenario.x_offset[1];
    ego[i].y = 0.0;
    ego[i].phi = kPi / 2;
    ego[i].v_forw = p.v_init;
  }
  if (options.solo) {
    ego[1].y = -kParkedDistance;
    ego[1].v_forw = 0.0;
  }
  auto to_world = [&](int i, const PedestrianState& s) { return i == 0 ? s : flip_frame(s, p); };
  auto other_in_frame = [&](int i) { return flip_frame(ego[1 - i], p); };
  result.initial = {to_world(0, ego[0]), to_world(1, ego[1])};

  std::array<AgentMemory, 2> memory{
      init_agent(ego[0], other_in_frame(0), RandomSource::for_pedestrian(seed, 0), p),
      init_agent(ego[1], other_in_frame(1), RandomSource::for_pedestrian(seed, 1), p)};
  const std::array<AgentConfig, 2> cfg{scenario.agent_config(0), scenario.agent_config(1)};
  const int active = options.solo ? 1 : 2;

  const int max_steps = static_cast<int>(std::lround(p.timeout / p.dt_sim));
  for (auto& tr : result.traces) tr.reserve(max_steps);

  for (int k = 0; k < max_steps; ++k) {
    const double t = k * p.dt_sim;
    std::array<TickResult, 2> ticks{};
    // Both agents read the state frozen at the start of the step.
    const std::array<PedestrianState, 2> seen{other_in_frame(0), other_in_frame(1)};
    for (int i = 0; i < active; ++i) {
      ticks[i] = agent_tick(ego[i], seen[i], memory[i], cfg[i], p, t);
    }
    for (int i = 0; i < active; ++i) ego[i] = step(ego[i], ticks[i].control, p.dt_sim);

    for (int i = 0; i < 2; ++i) {
      Telemetry tel = ticks[i].telemetry;
      tel.t = t + p.dt_sim;
      if (i == 1) {
        tel.plan_mean_x = -tel.plan_mean_x;
        tel.origin_x = -tel.origin_x;
      }
      result.traces[i].push_back({to_world(i, ego[i]), tel});
      if (options.record_snapshots && ticks[i].belief) {
        Snapshot snap;
        snap.step = k;
        snap.pedestrian = i;
        snap.t = t;
        snap.outcome = tel.outcome;
        for (const auto& w : memory[i].plan.waypoints) snap.plan.push_back(to_world(i, w));
        for (const auto& bp : *ticks[i].belief) {
          snap.belief.push_back(i == 0 ? bp : flip_belief(bp, p));
        }
        result.snapshots.push_back(std::move(snap));
      }
    }

    const PedestrianState& a = result.traces[0].back().state;
    const PedestrianState& b = result.traces[1].back().state;
    if (!options.solo && !result.passing_step && a.y > b.y) result.passing_step = k;

    if (!options.solo && std::hypot(a.x - b.x, a.y - b.y) < p.r_collision) {
      result.end_state = EndState::kCollision;
      return result;
    }
    for (int i = 0; i < active; ++i) {
      if (std::abs(ego[i].x) > p.half_width()) {
        result.end_state = EndState::kOutOfBounds;
        return result;
      }
    }
    for (int i = 0; i < active; ++i) {
      if (ego[i].y > p.sidewalk_length) {
        result.end_state = EndState::kFinished;
        return result;
      }
    }
  }
  result.end_state = EndState::kTimeout;
  return result;
}

std::vector<TrialResult> run_batch(const Scenario& scenario, int n_trials,
                                   std::uint64_t base_seed, const ModelParams& p,
                                   const TrialOptions& options, unsigned jobs) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
  std::vector<TrialResult> results(n_trials);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, n_trials);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n_trials; i = next++) {
      results[i] = run_trial(scenario, base_seed + static_cast<std::uint64_t>(i), p, options);
    }
  };
  if (jobs <= 1) {
    worker();
    return results;
  }
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  pool.clear();
  return results;
}

}  // namespace sidewalk
