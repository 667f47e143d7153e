#include "sidewalk/core.hpp"

#include <cmath>
#include <stdexcept>

namespace sidewalk {

int ModelParams::n_plan() const {
  return static_cast<int>(std::lround(horizon / dt_plan));
}

int ModelParams::sim_steps_per_plan() const {
  return static_cast<int>(std::lround(dt_plan / dt_sim));
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid parameter: ") + what);
  };
  require(dt_sim > 0 && dt_plan > 0 && horizon > 0, "time steps must be positive");
  require(std::abs(n_plan() * dt_plan - horizon) < 1e-9, "horizon must be a multiple of dt_plan");
  require(std::abs(sim_steps_per_plan() * dt_sim - dt_plan) < 1e-9,
          "dt_plan must be a multiple of dt_sim");
  require(v_init > 0 && r_com > 0 && a_e > 0, "v_init, r_com, a_e must be positive");
  require(alpha > 0 && alpha <= 1, "alpha must lie in (0, 1]");
  require(beta >= 0, "beta must be non-negative");
  require(gamma_c > 0 && gamma_c < 1, "gamma_c must lie in (0, 1)");
  require(zeta > 0 && eta > 0 && delta_x > 0 && r_collision > 0, "zeta, eta, delta_x, r_collision");
  for (double l : lambda) require(l >= 0, "lambda weights must be non-negative");
  require(replan_factor > 0 && replan_factor < retry_factor && retry_factor < 1,
          "0 < replan_factor < retry_factor < 1");
  require(timeout > 0, "timeout must be positive");
  require(sidewalk_width > 0 && sidewalk_length > 0, "sidewalk dimensions");
  require(sigma_floor > 0, "sigma_floor must be positive");
  require(fy_denominator > 0, "fy_denominator must be positive");
  require(optimizer_iterations > 0, "optimizer_iterations must be positive");
  require(constraint_tol > 0, "constraint_tol must be positive");
  require(dead_band > 0, "dead_band must be positive");
}

ModelParams default_params() { return ModelParams{}; }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomSource RandomSource::for_pedestrian(std::uint64_t trial_seed, int pedestrian_index) {
  return RandomSource(mix_seed(trial_seed, static_cast<std::uint64_t>(pedestrian_index)));
}

double RandomSource::normal() { return dist_(engine_); }

std::string to_string(PlanShiftMode mode) {
  return mode == PlanShiftMode::kPerPlanStep ? "per_plan_step" : "per_sim_step";
}

PlanShiftMode plan_shift_mode_from_string(const std::string& s) {
  if (s == "per_plan_step") return PlanShiftMode::kPerPlanStep;
  if (s == "per_sim_step") return PlanShiftMode::kPerSimStep;
  throw std::invalid_argument("unknown plan_shift_mode: " + s);
}

}  // namespace sidewalk
