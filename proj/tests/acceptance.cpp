#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include <sys/wait.h>

#include "sidewalk/metrics.hpp"

using namespace sidewalk;

namespace {

constexpr int kTrials = 100;
constexpr std::uint64_t kBaseSeed = 1000;

int failures = 0;

void report(int id, bool ok, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams p;
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  std::map<std::string, ScenarioSummary> sum;
  std::map<std::string, std::vector<TrialResult>> runs;
  for (const auto& name : scenario_names()) {
    runs[name] = run_batch(make_scenario(name), kTrials, kBaseSeed, p, {}, jobs);
    sum[name] = summarize(runs[name], p);
    const auto& s = sum[name];
    std::printf("  %-26s finished %3d collided %3d out %2d timeout %2d salsas %3d  hist %d/%d/%d/%d\n",
                name.c_str(), s.finished, s.collided, s.out_of_bounds, s.timeout, s.salsas,
                s.switch_histogram[0], s.switch_histogram[1], s.switch_histogram[2],
                s.switch_histogram[3]);
  }
  const auto& sym = sum["symmetric"];
  const auto& sides = sum["different_sides"];
  const auto& risk = sum["different_risk_thresholds"];
  const auto& same = sum["same_belief_bias"];
  const auto& diff = sum["different_belief_bias"];

  report(1, sym.salsas >= 1 && sym.salsas <= 20 && sym.finished + sym.collided >= 95,
         fmt("symmetric salsas %d in [1, 20], finished + collided %d >= 95", sym.salsas,
             sym.finished + sym.collided));

  report(2, sides.salsas == 0 && sides.collided == 0,
         fmt("different_sides salsas %d, collisions %d (want 0, 0)", sides.salsas, sides.collided));

  int both = 0, low_first = 0;
  for (const auto& r : runs["different_risk_thresholds"]) {
    const auto m = trial_metrics(r, p);
    if (m.first_replan[0] && m.first_replan[1]) {
      ++both;
      low_first += *m.first_replan[0] < *m.first_replan[1];
    }
  }
  const double low_share = both ? static_cast<double>(low_first) / both : 0.0;
  report(3, risk.salsas == 0 && risk.collided == 0 && both > 0 && low_share >= 0.7,
         fmt("different_risk_thresholds salsas %d, collisions %d (want 0, 0); low-rho first in "
             "%d/%d = %.2f (want >= 0.70)",
             risk.salsas, risk.collided, low_first, both, low_share));

  report(4, diff.salsas > sym.salsas && sym.salsas >= same.salsas && diff.salsas >= 3 * sym.salsas,
         fmt("salsas diff_bias %d > symmetric %d >= same_bias %d, diff_bias >= 3 x symmetric",
             diff.salsas, sym.salsas, same.salsas));

  const bool only_expected = sides.collided == 0 && risk.collided == 0 && same.collided == 0;
  const double salsa_share =
      diff.collided ? static_cast<double>(diff.collided_with_salsa) / diff.collided : 0.0;
  report(5, only_expected && diff.collided >= 10 && diff.collided <= 40 && salsa_share >= 0.7,
         fmt("collisions sides %d, risk %d, same_bias %d (want 0); diff_bias %d in [10, 40]; "
             "salsa share of diff_bias collisions %.2f (want >= 0.70)",
             sides.collided, risk.collided, same.collided, diff.collided, salsa_share));

  double best_other = 0.0;
  for (const auto& [name, s] : sum) {
    if (name != "different_belief_bias") best_other = std::max(best_other, s.multi_switch_share());
  }
  report(6,
         sides.histogram_mode() == 0 && same.histogram_mode() == 0 && sym.histogram_mode() == 1 &&
             risk.histogram_mode() == 1 && diff.multi_switch_share() > best_other,
         fmt("modes sides %d, same_bias %d (want 0), symmetric %d, risk %d (want 1); >= 2 switch "
             "share diff_bias %.3f vs best other %.3f",
             sides.histogram_mode(), same.histogram_mode(), sym.histogram_mode(),
             risk.histogram_mode(), diff.multi_switch_share(), best_other));

  const int status = std::system(PROPERTY_TESTS " --no-intro=true --minimal=true");
  const bool props = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  report(7, props, props ? "property suites pass" : "property suites report failures");

  ModelParams quiet = p;
  quiet.beta = 0.0;
  double worst = 0.0;
  std::string end_state;
  for (std::uint64_t seed : {kBaseSeed, kBaseSeed + 1}) {
    const auto r = run_trial(make_scenario("symmetric"), seed, quiet);
    end_state = to_string(r.end_state);
    for (int k = 0; k < r.steps(); ++k) {
      const auto& a = r.traces[0][k].state;
      const auto b = flip_frame(r.traces[1][k].state, quiet);
      for (double d : {a.x - b.x, a.y - b.y, wrap(a.phi - b.phi), a.v_forw - b.v_forw,
                       a.v_orth - b.v_orth, a.omega - b.omega}) {
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  report(8, worst <= 1e-9,
         fmt("beta = 0 symmetric mirror deviation %.3g (want <= 1e-9), end state %s", worst,
             end_state.c_str()));

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("runtime %.1f s, %d criteria failed\n", secs, failures);
  return failures ? 1 : 0;
}
