#include "sidewalk/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sidewalk/dynamics.hpp"
#include "sidewalk/risk.hpp"

namespace sidewalk {
namespace {

constexpr int kInnerIterations = 50;
constexpr double kFinalInnerTol = 1e-6;
constexpr double kInitialPenalty = 30.0;
constexpr int kMaxIdleRounds = 20;

constexpr std::array<double, 3> kLimits{kMaxForwardAccel, kMaxOrthogonalAccel, kMaxAngularAccel};

struct Adjoint {
  double x = 0, y = 0, phi = 0, v_forw = 0, v_orth = 0, omega = 0;
};

double step_cost(const PedestrianState& s, const ControlInput& u, const CostReference& ref,
                 const ModelParams& p) {
  const auto& l = p.lambda;
  const double dv = s.v_forw - ref.v_forw;
  const double back = std::min(s.v_forw, 0.0);
  const double dtheta = s.phi - ref.theta;
  const double wd = u.omega_dot / kMaxAngularAccel;
  const double af = u.a_forw / kMaxForwardAccel;
  const double ao = u.a_orth / kMaxOrthogonalAccel;
  return l[0] * dv * dv + l[1] * back * back + l[2] * s.v_orth * s.v_orth +
         l[3] * dtheta * dtheta + l[4] * wd * wd + l[5] * af * af + l[6] * ao * ao;
}

// Adds the direct partials of step_cost to the state adjoint and control gradient.
void step_cost_partials(const PedestrianState& s, const ControlInput& u, const CostReference& ref,
                        const ModelParams& p, Adjoint& a, double* g) {
  const auto& l = p.lambda;
  a.v_forw += 2.0 * l[0] * (s.v_forw - ref.v_forw) + 2.0 * l[1] * std::min(s.v_forw, 0.0);
  a.v_orth += 2.0 * l[2] * s.v_orth;
  a.phi += 2.0 * l[3] * (s.phi - ref.theta);
  g[0] += 2.0 * l[5] * u.a_forw / (kMaxForwardAccel * kMaxForwardAccel);
  g[1] += 2.0 * l[6] * u.a_orth / (kMaxOrthogonalAccel * kMaxOrthogonalAccel);
  g[2] += 2.0 * l[4] * u.omega_dot / (kMaxAngularAccel * kMaxAngularAccel);
}

// Pulls the adjoint of the post-step state back through one step(), writing
// control sensitivities into g and returning the pre-step adjoint.
Adjoint backprop_step(const PedestrianState& next, const Adjoint& a, double h, double* g) {
  const double c = std::cos(next.phi);
  const double s = std::sin(next.phi);
  const double d_vf = a.v_forw + h * (a.x * c + a.y * s);
  const double d_vo = a.v_orth + h * (-a.x * s + a.y * c);
  const double d_phi = a.phi + h * (a.x * (-next.v_forw * s - next.v_orth * c) +
                                    a.y * (next.v_forw * c - next.v_orth * s));
  const double d_w = a.omega + h * d_phi;
  g[0] += h * d_vf;
  g[1] += h * d_vo;
  g[2] += h * d_w;
  return {a.x, a.y, d_phi, d_vf, d_vo, d_w};
}

std::vector<ControlInput> to_controls(const std::vector<double>& z) {
  std::vector<ControlInput> u(z.size() / 3);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = {z[3 * k], z[3 * k + 1], z[3 * k + 2]};
  return u;
}

std::vector<double> to_vector(std::span<const ControlInput> u) {
  std::vector<double> z(3 * u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    z[3 * k] = u[k].a_forw;
    z[3 * k + 1] = u[k].a_orth;
    z[3 * k + 2] = u[k].omega_dot;
  }
  return z;
}

void project(std::vector<double>& z) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double lim = kLimits[i % 3];
    z[i] = std::clamp(z[i], -lim, lim);
  }
}

// Augmented Lagrangian of the risk-capped planning problem. Each horizon point
// contributes one inequality risk_k - cap <= 0 (together equivalent to
// max_k risk_k <= cap).
class CappedPlanProblem {
 public:
  CappedPlanProblem(const PedestrianState& origin, std::span<const BeliefPoint> belief,
                    double cap, const CostReference& ref, const ModelParams& p)
      : origin_(origin), belief_(belief), cap_(cap), ref_(ref), p_(p),
        multipliers_(belief.size(), 0.0) {}

  struct Eval {
    double objective = 0.0;
    double cost = 0.0;
    double max_risk = 0.0;
  };

  Eval evaluate(const std::vector<double>& z, std::vector<double>* grad) {
    const auto u = to_controls(z);
    const auto states = rollout(origin_, u, p_.dt_plan);
    risks_.resize(states.size());

    Eval e;
    std::vector<PointRiskGrad> rg(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
      e.cost += step_cost(states[k], u[k], ref_, p_);
      rg[k] = point_risk_with_gradient(states[k].x, states[k].y, belief_[k], p_);
      risks_[k] = rg[k].total;
      e.max_risk = std::max(e.max_risk, rg[k].total);
    }
    e.objective = e.cost;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const double shifted = std::max(0.0, multipliers_[k] + penalty_ * (rg[k].total - cap_));
      e.objective += (shifted * shifted - multipliers_[k] * multipliers_[k]) / (2.0 * penalty_);
    }
    if (!grad) return e;

    grad->assign(z.size(), 0.0);
    Adjoint a;
    for (std::size_t k = states.size(); k-- > 0;) {
      double* g = grad->data() + 3 * k;
      step_cost_partials(states[k], u[k], ref_, p_, a, g);
      const double weight = std::max(0.0, multipliers_[k] + penalty_ * (rg[k].total - cap_));
      a.x += weight * rg[k].d_x;
      a.y += weight * rg[k].d_y;
      a = backprop_step(states[k], a, p_.dt_plan, g);
    }
    return e;
  }

  // Multiplier update; returns the maximum constraint violation it saw.
  double update_multipliers() {
    double worst = 0.0;
    for (std::size_t k = 0; k < risks_.size(); ++k) {
      const double g = risks_[k] - cap_;
      multipliers_[k] = std::max(0.0, multipliers_[k] + penalty_ * g);
      worst = std::max(worst, g);
    }
    return worst;
  }

  double penalty() const { return penalty_; }
  void set_penalty(double mu) { penalty_ = mu; }

 private:
  PedestrianState origin_;
  std::span<const BeliefPoint> belief_;
  double cap_;
  CostReference ref_;
  const ModelParams& p_;
  std::vector<double> multipliers_;
  std::vector<double> risks_;
  double penalty_ = kInitialPenalty;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool at_lower(double z, std::size_t i) { return z <= -kLimits[i % 3]; }
bool at_upper(double z, std::size_t i) { return z >= kLimits[i % 3]; }

// Components pinned at a bound with the gradient pushing outward.
bool is_fixed(const std::vector<double>& z, const std::vector<double>& g, std::size_t i) {
  return (at_lower(z[i], i) && g[i] > 0.0) || (at_upper(z[i], i) && g[i] < 0.0);
}

double projected_gradient_norm(const std::vector<double>& z, const std::vector<double>& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double lim = kLimits[i % 3];
    worst = std::max(worst, std::abs(std::clamp(z[i] - g[i], -lim, lim) - z[i]));
  }
  return worst;
}

// Limited-memory BFGS curvature pairs; directions are restricted to the
// components that are free to move.
class LbfgsHistory {
 public:
  static constexpr std::size_t kDepth = 8;

  bool empty() const { return s_.empty(); }
  void clear() {
    s_.clear();
    y_.clear();
  }

  void push(const std::vector<double>& step, const std::vector<double>& g_new,
            const std::vector<double>& g_old) {
    std::vector<double> y(step.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = g_new[i] - g_old[i];
    if (dot(step, y) <= 1e-12 * dot(y, y)) return;
    if (s_.size() == kDepth) {
      s_.erase(s_.begin());
      y_.erase(y_.begin());
    }
    s_.push_back(step);
    y_.push_back(std::move(y));
  }

  void direction(const std::vector<double>& z, const std::vector<double>& g,
                 std::vector<double>& d) {
    const std::size_t n = g.size();
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = is_fixed(z, g, i) ? 0.0 : g[i];
    const std::size_t m = s_.size();
    std::vector<double> a(m);
    for (std::size_t j = m; j-- > 0;) {
      a[j] = dot(s_[j], q) / dot(s_[j], y_[j]);
      for (std::size_t i = 0; i < n; ++i) q[i] -= a[j] * y_[j][i];
    }
    if (m > 0) {
      const double scale = dot(s_.back(), y_.back()) / dot(y_.back(), y_.back());
      for (auto& v : q) v *= scale;
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double b = dot(y_[j], q) / dot(s_[j], y_[j]);
      for (std::size_t i = 0; i < n; ++i) q[i] += (a[j] - b) * s_[j][i];
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = is_fixed(z, g, i) ? 0.0 : -q[i];
    if (dot(d, g) >= 0.0) {
      clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = is_fixed(z, g, i) ? 0.0 : -g[i];
    }
  }

 private:
  std::vector<std::vector<double>> s_;
  std::vector<std::vector<double>> y_;
};

}  // namespace

double plan_cost(const Plan& plan, const CostReference& ref, const ModelParams& p) {
  double c = 0.0;
  for (std::size_t k = 0; k < plan.controls.size(); ++k) {
    c += step_cost(plan.waypoints[k], plan.controls[k], ref, p);
  }
  return c;
}

double plan_cost_gradient(const PedestrianState& origin, std::span<const ControlInput> controls,
                          const CostReference& ref, const ModelParams& p,
                          std::vector<double>& grad) {
  const auto states = rollout(origin, controls, p.dt_plan);
  grad.assign(3 * controls.size(), 0.0);
  double c = 0.0;
  Adjoint a;
  for (std::size_t k = states.size(); k-- > 0;) {
    c += step_cost(states[k], controls[k], ref, p);
    step_cost_partials(states[k], controls[k], ref, p, a, grad.data() + 3 * k);
    a = backprop_step(states[k], a, p.dt_plan, grad.data() + 3 * k);
  }
  return c;
}

Plan initial_plan(const PedestrianState& s0, const ModelParams& p) {
  return make_plan(s0, std::vector<ControlInput>(p.n_plan()), p);
}

Plan shifted_emergency_plan(const PedestrianState& s, const ModelParams& p) {
  std::vector<ControlInput> controls;
  controls.reserve(p.n_plan());
  PedestrianState cur = s;
  for (int k = 0; k < p.n_plan(); ++k) {
    const ControlInput u = clamp_control({-2.0 * cur.v_forw, -2.0 * cur.v_orth, -2.0 * cur.omega});
    controls.push_back(u);
    cur = step(cur, u, p.dt_plan);
  }
  return make_plan(s, std::move(controls), p);
}

ReplanResult replan(const PedestrianState& s, std::span<const BeliefPoint> belief,
                    double risk_cap, const Plan& warm_start, const CostReference& ref,
                    const ModelParams& p) {
  CappedPlanProblem problem(s, belief, risk_cap, ref, p);
  const double tol = p.constraint_tol;

  std::vector<double> z = to_vector(warm_start.controls);
  project(z);

  ReplanResult result;
  double best_cost = std::numeric_limits<double>::infinity();
  double least_violation = std::numeric_limits<double>::infinity();
  std::vector<double> best_z;
  auto consider = [&](const std::vector<double>& cand, const CappedPlanProblem::Eval& e) {
    if (e.max_risk <= risk_cap + tol) {
      if (e.cost < best_cost) {
        best_cost = e.cost;
        best_z = cand;
      }
    } else if (best_z.empty() && e.max_risk < least_violation) {
      least_violation = e.max_risk;
      result.max_risk = e.max_risk;
      result.cost = e.cost;
    }
  };

  std::vector<double> grad, grad_new, z_new(z.size()), dir(z.size()), step_vec(z.size());
  auto e = problem.evaluate(z, &grad);
  consider(z, e);

  LbfgsHistory history;
  int iterations = 0;
  double inner_tol = 1e-2;
  double last_violation = std::numeric_limits<double>::infinity();
  int idle_rounds = 0;
  while (iterations < p.optimizer_iterations) {
    const int round_start = iterations;
    // Inner loop: projected L-BFGS on the current augmented Lagrangian.
    bool converged = false;
    history.clear();
    const int inner_end = std::min(p.optimizer_iterations, iterations + kInnerIterations);
    while (iterations < inner_end) {
      if (projected_gradient_norm(z, grad) < inner_tol) {
        converged = true;
        break;
      }
      ++iterations;
      history.direction(z, grad, dir);
      double t = history.empty() ? std::min(1.0, 1.0 / std::sqrt(dot(grad, grad))) : 1.0;
      CappedPlanProblem::Eval e_new;
      bool accepted = false;
      for (int ls = 0; ls < 30; ++ls) {
        for (std::size_t i = 0; i < z.size(); ++i) z_new[i] = z[i] + t * dir[i];
        project(z_new);
        for (std::size_t i = 0; i < z.size(); ++i) step_vec[i] = z_new[i] - z[i];
        e_new = problem.evaluate(z_new, &grad_new);
        if (e_new.objective <= e.objective + 1e-4 * dot(grad, step_vec)) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        if (history.empty()) {
          converged = true;
          break;
        }
        history.clear();
        continue;
      }
      history.push(step_vec, grad_new, grad);
      z.swap(z_new);
      grad.swap(grad_new);
      e = e_new;
      consider(z, e);
    }

    const double violation = problem.update_multipliers();
    if (violation <= tol && converged && inner_tol <= kFinalInnerTol) break;
    inner_tol = std::max(kFinalInnerTol, 0.1 * inner_tol);
    // A zero gradient at a violating point gives the penalty nothing to act on.
    idle_rounds = iterations == round_start ? idle_rounds + 1 : 0;
    if (idle_rounds >= kMaxIdleRounds) break;
    if (violation > 0.25 * last_violation) problem.set_penalty(problem.penalty() * 5.0);
    last_violation = violation;
    e = problem.evaluate(z, &grad);
  }

  result.iterations = iterations;
  if (!best_z.empty()) {
    Plan plan = make_plan(s, to_controls(best_z), p, warm_start.created_at);
    result.max_risk = perceived_risk(plan, belief, p).max_total;
    result.cost = plan_cost(plan, ref, p);
    result.plan = std::move(plan);
  }
  return result;
}

}  // namespace sidewalk
