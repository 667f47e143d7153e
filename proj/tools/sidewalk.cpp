#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sidewalk/config.hpp"
#include "sidewalk/metrics.hpp"
#include "sidewalk/trace.hpp"

namespace fs = std::filesystem;
using namespace sidewalk;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;

struct RunArgs {
  std::string scenario = "all";
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::vector<std::string> overrides;
  unsigned jobs = 0;
  bool no_traces = false;
};

struct ReplayArgs {
  std::string trace;
  std::optional<int> up_to;
};

std::string summary_table(const std::vector<ScenarioSummary>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %6s %8s %8s %13s %7s %6s\n", "scenario", "trials",
                "finished", "collided", "out_of_bounds", "timeout", "salsas");
  out << line;
  for (const auto& s : rows) {
    std::snprintf(line, sizeof line, "%-28s %6d %8d %8d %13d %7d %6d\n", s.scenario.c_str(),
                  s.n_trials, s.finished, s.collided, s.out_of_bounds, s.timeout, s.salsas);
    out << line;
  }
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int cmd_run(const RunArgs& args, bool trials_given, bool seed_given) {
  ConfigFile cfg;
  std::vector<Scenario> scenarios;
  std::string run_label = args.scenario;
  int trials = args.trials;
  std::uint64_t seed = args.seed;

  try {
    std::error_code ec;
    if (fs::is_regular_file(args.scenario, ec)) {
      cfg = load_config(args.scenario);
      if (cfg.run) {
        if (!trials_given) trials = cfg.run->trials;
        if (!seed_given) seed = cfg.run->seed;
        run_label = cfg.run->scenario;
      }
      if (cfg.scenario) {
        scenarios.push_back(*cfg.scenario);
        run_label = cfg.scenario->name;
      } else if (!cfg.run) {
        throw ConfigError(args.scenario + ": no [scenario] or [run] section");
      }
    }
    if (scenarios.empty()) {
      if (run_label == "all") {
        for (const auto& name : scenario_names()) scenarios.push_back(make_scenario(name));
      } else {
        scenarios.push_back(make_scenario(run_label));
      }
    }
    for (const auto& o : args.overrides) apply_override(cfg.params, o);
    cfg.params.validate();
    if (trials < 1) throw ConfigError("--trials must be at least 1");
    for (const auto& s : scenarios) {
      for (double rho : s.rho) {
        if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
      }
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  const fs::path out_dir(args.out);
  const fs::path trace_dir = out_dir / "traces";
  try {
    fs::create_directories(out_dir);
    if (!args.no_traces) fs::create_directories(trace_dir);

    ConfigFile effective;
    effective.params = cfg.params;
    effective.run = RunSettings{run_label, trials, seed};
    if (scenarios.size() == 1) effective.scenario = scenarios.front();
    write_config(out_dir / "effective_config.txt", effective);

    const unsigned jobs = args.jobs ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
    TrialOptions options;
    options.record_snapshots = !args.no_traces;

    std::vector<ScenarioSummary> summaries;
    std::ostringstream trials_csv;
    trials_csv << "scenario,seed,end_state,steps,passing_step,switches_0,switches_1,salsa\n";
    for (const auto& scenario : scenarios) {
      const auto results = run_batch(scenario, trials, seed, cfg.params, options, jobs);
      for (const auto& r : results) {
        if (!args.no_traces) export_trial(trace_dir, r, cfg.params);
        const TrialMetrics m = trial_metrics(r, cfg.params);
        trials_csv << r.scenario << "," << r.seed << "," << to_string(r.end_state) << ","
                   << r.steps() << ","
                   << (r.passing_step ? std::to_string(*r.passing_step) : std::string()) << ","
                   << m.switches[0] << "," << m.switches[1] << "," << (m.salsa ? 1 : 0) << "\n";
      }
      summaries.push_back(summarize(results, cfg.params));
    }

    std::ostringstream hist;
    hist << "scenario,switches_0,switches_1,switches_2,switches_3_or_more\n";
    for (const auto& s : summaries) {
      hist << s.scenario;
      for (int c : s.switch_histogram) hist << "," << c;
      hist << "\n";
    }

    const std::string table = summary_table(summaries);
    write_text(out_dir / "summary.txt", table);
    write_text(out_dir / "switch_histogram.csv", hist.str());
    write_text(out_dir / "trials.csv", trials_csv.str());
    std::cout << table;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}

std::optional<fs::path> find_config_for(const fs::path& trace) {
  const fs::path dir = trace.parent_path();
  for (const fs::path& candidate : {dir / "effective_config.txt", dir.parent_path() / "effective_config.txt"}) {
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

int cmd_replay(const ReplayArgs& args) {
  const fs::path trace_path(args.trace);
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "error: cannot open " << trace_path.string() << "\n";
    return kExitIo;
  }

  ModelParams p;
  TrialResult r;
  try {
    if (const auto cfg_path = find_config_for(trace_path)) p = load_config(cfg_path->string()).params;
    r = read_trace_csv(in);
  } catch (const TraceError& e) {
    std::cerr << "error: " << trace_path.string() << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  const TrialMetrics m = trial_metrics(r, p, args.up_to);
  std::cout << "steps: " << r.steps() << "\n";
  std::cout << "passing_step: " << (r.passing_step ? std::to_string(*r.passing_step) : "none") << "\n";
  if (args.up_to) std::cout << "up_to: " << *args.up_to << "\n";
  std::cout << "switches: " << m.switches[0] << " " << m.switches[1] << "\n";
  std::cout << "salsa: " << (m.salsa ? "yes" : "no") << "\n";

  if (args.up_to) return 0;
  fs::path json_path = trace_path;
  json_path.replace_extension(".json");
  std::ifstream js(json_path);
  if (!js) return 0;
  try {
    const StoredTrialSummary stored = read_trace_summary(js);
    const bool match = stored.switches == m.switches && stored.salsa == m.salsa &&
                       stored.passing_step == r.passing_step;
    std::cout << "stored: end_state " << to_string(stored.end_state) << ", switches "
              << stored.switches[0] << " " << stored.switches[1] << ", salsa "
              << (stored.salsa ? "yes" : "no") << "\n";
    std::cout << (match ? "stored metrics match" : "stored metrics DIFFER") << "\n";
    return match ? 0 : kExitMismatch;
  } catch (const TraceError& e) {
    std::cerr << "error: " << json_path.string() << ": " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-pedestrian sidewalk encounter simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run scenario batches and export traces");
  run_cmd->add_option("--scenario", run.scenario,
                      "Scenario name, 'all', or a config file path")
      ->capture_default_str();
  auto* trials_opt = run_cmd->add_option("--trials", run.trials, "Trials per scenario")
                         ->capture_default_str();
  auto* seed_opt = run_cmd->add_option("--seed", run.seed, "Seed of the first trial")
                       ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  run_cmd->add_option("--set", run.overrides, "Parameter override key=value (repeatable)")
      ->allow_extra_args(false);
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  run_cmd->add_flag("--no-traces", run.no_traces, "Skip per-trial trace files");

  ReplayArgs replay;
  auto* replay_cmd = app.add_subcommand("replay", "Recompute metrics from a trace CSV");
  replay_cmd->add_option("trace", replay.trace, "Trace CSV file")->required();
  replay_cmd->add_option("--up-to", replay.up_to, "Only use steps up to this index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (*run_cmd) return cmd_run(run, trials_opt->count() > 0, seed_opt->count() > 0);
  return cmd_replay(replay);
}
