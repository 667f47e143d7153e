#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "sidewalk/metrics.hpp"

namespace sidewalk {

/// A trace file that cannot be parsed. The message names the first bad record.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "<scenario>_<seed>", the stem shared by a trial's CSV and JSON files.
std::string trace_stem(const TrialResult& r);

/// One row per simulation step: time, then for each pedestrian the world
/// state, perceived risk, replan flag and outcome, and the plan statistics
/// used by the switch metric.
void write_trace_csv(std::ostream& out, const TrialResult& r);

/// Outcome, metrics and the plan/belief snapshots taken at replan events.
void write_trace_json(std::ostream& out, const TrialResult& r, const ModelParams& p);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json. Throws std::runtime_error
/// on I/O failure.
void export_trial(const std::filesystem::path& dir, const TrialResult& r, const ModelParams& p);

/// Rebuilds the per-step traces of a trial from its CSV. The passing step is
/// recomputed from the positions; end state, seed and snapshots are not part
/// of the CSV and keep their defaults.
TrialResult read_trace_csv(std::istream& in);

/// Values recorded in a trial's JSON file at run time.
struct StoredTrialSummary {
  std::string scenario;
  std::uint64_t seed = 0;
  EndState end_state = EndState::kTimeout;
  std::optional<int> passing_step;
  std::array<int, 2> switches{};
  bool salsa = false;
};

StoredTrialSummary read_trace_summary(std::istream& in);

}  // namespace sidewalk
