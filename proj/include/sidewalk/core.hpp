#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace sidewalk {

inline constexpr double kPi = std::numbers::pi;

/// Hard input limits of the pedestrian dynamics model.
inline constexpr double kMaxForwardAccel = 2.0;     // m/s^2
inline constexpr double kMaxOrthogonalAccel = 1.0;  // m/s^2
inline constexpr double kMaxAngularAccel = kPi;     // rad/s^2

/// Kinematic state of one pedestrian.
///
/// Positions and heading are expressed in a sidewalk-aligned frame: x is the
/// lateral coordinate (centerline at 0), y the longitudinal one, and the
/// heading is measured counterclockwise from +x. Velocities live in the body
/// frame; `v_orth` is positive toward the pedestrian's left.
struct PedestrianState {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
  double v_forw = 0.0;
  double v_orth = 0.0;
  double omega = 0.0;

  bool operator==(const PedestrianState&) const = default;
};

struct ControlInput {
  double a_forw = 0.0;
  double a_orth = 0.0;
  double omega_dot = 0.0;

  bool operator==(const ControlInput&) const = default;
};

enum class PlanShiftMode { kPerPlanStep, kPerSimStep };

/// All model constants. Defaults reproduce the reference model.
struct ModelParams {
  double dt_sim = 0.05;
  double dt_plan = 0.25;
  double horizon = 7.0;
  double v_init = 1.3;
  double r_com = 0.3;
  double a_e = 0.2;
  double alpha = 0.1;
  double beta = 0.03;
  double gamma_c = 0.5;
  double zeta = 0.25;
  double eta = 10.0;
  double delta_x = 0.15;
  double r_collision = 0.25;
  std::array<double, 7> lambda{1.0, 100.0, 2.0, 5.0, 1.0, 1.0, 1.0};
  double replan_factor = 0.75;
  double retry_factor = 0.9;
  double timeout = 60.0;

  double sidewalk_width = 2.5;
  double sidewalk_length = 15.0;
  double sigma_floor = 1e-4;
  // Denominator of the longitudinal risk factor exp(-dy^2 / d); (2 r_com)^2.
  double fy_denominator = 0.36;
  bool renormalize_bias = true;
  PlanShiftMode plan_shift_mode = PlanShiftMode::kPerPlanStep;
  int optimizer_iterations = 200;
  double constraint_tol = 1e-3;
  double dead_band = 0.2;

  /// Number of plan (and belief) points over the horizon.
  int n_plan() const;
  /// Simulation steps per plan interval.
  int sim_steps_per_plan() const;
  double half_width() const { return 0.5 * sidewalk_width; }

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

ModelParams default_params();

/// Deterministic stream of standard-normal draws.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Seeds a stream for one pedestrian of one trial.
  static RandomSource for_pedestrian(std::uint64_t trial_seed, int pedestrian_index);

  double normal();
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

inline double normal_draw(RandomSource& rng) { return rng.normal(); }

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

std::string to_string(PlanShiftMode mode);
PlanShiftMode plan_shift_mode_from_string(const std::string& s);

}  // namespace sidewalk
