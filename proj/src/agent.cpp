#include "sidewalk/agent.hpp"

#include "sidewalk/risk.hpp"

namespace sidewalk {

AgentMemory init_agent(const PedestrianState& self, const PedestrianState& other,
                       RandomSource rng, const ModelParams& p) {
  AgentMemory m;
  m.obs = init_observation(other);
  m.plan = initial_plan(self, p);
  m.rng = std::move(rng);
  return m;
}

TickResult agent_tick(const PedestrianState& self, const PedestrianState& other,
                      AgentMemory& memory, const AgentConfig& cfg, const ModelParams& p,
                      double t) {
  TickResult out;
  Telemetry& tel = out.telemetry;
  tel.t = t;
  tel.threshold = cfg.rho;

  memory.obs = update_observation(memory.obs, other, memory.rng, p);
  auto belief = build_belief(self, memory.obs, p, cfg.bias);

  Plan current = rebase_plan(memory.plan, self, p);
  tel.risk = perceived_risk(current, belief, p).max_total;

  std::optional<double> cap;
  if (memory.mode == AgentMode::kRecovering) {
    cap = p.retry_factor * cfg.rho;
  } else if (tel.risk > cfg.rho) {
    cap = p.replan_factor * cfg.rho;
  }

  if (cap) {
    tel.replanned = true;
    tel.cap = *cap;
    const CostReference ref{p.v_init, kPi / 2};
    auto res = replan(self, belief, *cap, current, ref, p);
    tel.iterations = res.iterations;
    if (res.feasible()) {
      current = std::move(*res.plan);
      memory.mode = AgentMode::kNormal;
      tel.outcome = ReplanOutcome::kSuccess;
    } else {
      current = shifted_emergency_plan(self, p);
      memory.mode = AgentMode::kRecovering;
      tel.outcome = ReplanOutcome::kInfeasible;
    }
    current.created_at = t;
    memory.steps_on_first_control = 0;
    out.belief = std::move(belief);
  }
  tel.mode = memory.mode;
  tel.plan_mean_x = current.mean_x();
  tel.origin_x = self.x;

  out.control = current.controls.front();
  ++memory.steps_on_first_control;
  const bool shift = p.plan_shift_mode == PlanShiftMode::kPerSimStep ||
                     memory.steps_on_first_control >= p.sim_steps_per_plan();
  if (shift) {
    current = advance_plan(current, 1);
    memory.steps_on_first_control = 0;
  }
  memory.plan = std::move(current);
  return out;
}

const char* to_string(AgentMode mode) {
  return mode == AgentMode::kNormal ? "normal" : "recovering";
}

const char* to_string(ReplanOutcome outcome) {
  switch (outcome) {
    case ReplanOutcome::kNone: return "none";
    case ReplanOutcome::kSuccess: return "success";
    case ReplanOutcome::kInfeasible: return "infeasible";
  }
  return "none";
}

}  // namespace sidewalk
