#include "sidewalk/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sidewalk/config.hpp"

namespace sidewalk {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 11> kPedestrianColumns{
    "x",    "y",         "phi",     "v_forw",      "v_orth",  "omega",
    "risk", "replanned", "outcome", "plan_mean_x", "origin_x"};

std::vector<std::string> header_columns() {
  std::vector<std::string> cols{"step", "t"};
  for (int i = 0; i < 2; ++i) {
    for (const char* c : kPedestrianColumns) cols.push_back("p" + std::to_string(i) + "_" + c);
  }
  return cols;
}

ReplanOutcome outcome_from_string(const std::string& s) {
  if (s == "none") return ReplanOutcome::kNone;
  if (s == "success") return ReplanOutcome::kSuccess;
  if (s == "infeasible") return ReplanOutcome::kInfeasible;
  throw std::invalid_argument("unknown replan outcome '" + s + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

json state_json(const PedestrianState& s) {
  return json::array({s.x, s.y, s.phi, s.v_forw, s.v_orth, s.omega});
}

}  // namespace

std::string trace_stem(const TrialResult& r) { return r.scenario + "_" + std::to_string(r.seed); }

void write_trace_csv(std::ostream& out, const TrialResult& r) {
  const auto cols = header_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (int k = 0; k < r.steps(); ++k) {
    out << k << "," << format_double(r.traces[0][k].telemetry.t);
    for (int i = 0; i < 2; ++i) {
      const auto& [s, tel] = r.traces[i][k];
      for (double v : {s.x, s.y, s.phi, s.v_forw, s.v_orth, s.omega, tel.risk}) {
        out << "," << format_double(v);
      }
      out << "," << (tel.replanned ? 1 : 0) << "," << to_string(tel.outcome) << ","
          << format_double(tel.plan_mean_x) << "," << format_double(tel.origin_x);
    }
    out << "\n";
  }
}

void write_trace_json(std::ostream& out, const TrialResult& r, const ModelParams& p) {
  const TrialMetrics m = trial_metrics(r, p);
  json j;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["end_state"] = to_string(r.end_state);
  j["steps"] = r.steps();
  j["passing_step"] = r.passing_step ? json(*r.passing_step) : json(nullptr);
  j["metrics"] = {{"switches", {m.switches[0], m.switches[1]}}, {"salsa", m.salsa}};

  json snaps = json::array();
  for (const auto& s : r.snapshots) {
    json plan = json::array();
    for (const auto& w : s.plan) plan.push_back(state_json(w));
    json belief = json::array();
    for (const auto& bp : s.belief) {
      json comps = json::array();
      for (const auto& c : bp.components) {
        comps.push_back({{"mu", c.mu}, {"sigma", c.sigma}, {"gamma", c.gamma}});
      }
      belief.push_back({{"t_b", bp.t_b}, {"y_b", bp.y_b}, {"components", comps}});
    }
    snaps.push_back({{"step", s.step},
                     {"pedestrian", s.pedestrian},
                     {"t", s.t},
                     {"outcome", to_string(s.outcome)},
                     {"plan", plan},
                     {"belief", belief}});
  }
  j["snapshots"] = snaps;
  out << j.dump() << "\n";
}

void export_trial(const std::filesystem::path& dir, const TrialResult& r, const ModelParams& p) {
  const std::string stem = trace_stem(r);
  {
    std::ofstream csv(dir / (stem + ".csv"));
    if (!csv) throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
    write_trace_csv(csv, r);
    if (!csv) throw std::runtime_error("write failed: " + (dir / (stem + ".csv")).string());
  }
  std::ofstream js(dir / (stem + ".json"));
  if (!js) throw std::runtime_error("cannot write " + (dir / (stem + ".json")).string());
  write_trace_json(js, r, p);
  if (!js) throw std::runtime_error("write failed: " + (dir / (stem + ".json")).string());
}

TrialResult read_trace_csv(std::istream& in) {
  const auto expected = header_columns();
  std::string line;
  if (!std::getline(in, line)) throw TraceError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (split(line, ',') != expected) throw TraceError("line 1: unexpected header");

  TrialResult r;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != expected.size()) {
      throw TraceError(where + "expected " + std::to_string(expected.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    try {
      const int step = to_int(fields[0]);
      if (step != r.steps()) {
        throw std::invalid_argument("step " + std::to_string(step) + " out of sequence");
      }
      const double t = to_double(fields[1]);
      for (int i = 0; i < 2; ++i) {
        const std::size_t b = 2 + i * kPedestrianColumns.size();
        StepRecord rec;
        rec.state = {to_double(fields[b]),     to_double(fields[b + 1]), to_double(fields[b + 2]),
                     to_double(fields[b + 3]), to_double(fields[b + 4]), to_double(fields[b + 5])};
        rec.telemetry.t = t;
        rec.telemetry.risk = to_double(fields[b + 6]);
        const int flag = to_int(fields[b + 7]);
        if (flag != 0 && flag != 1) throw std::invalid_argument("replanned flag must be 0 or 1");
        rec.telemetry.replanned = flag == 1;
        rec.telemetry.outcome = outcome_from_string(fields[b + 8]);
        rec.telemetry.plan_mean_x = to_double(fields[b + 9]);
        rec.telemetry.origin_x = to_double(fields[b + 10]);
        r.traces[i].push_back(rec);
      }
    } catch (const std::invalid_argument& e) {
      throw TraceError(where + e.what());
    }
  }
  if (r.steps() == 0) throw TraceError("line " + std::to_string(line_no + 1) + ": no records");

  for (int k = 0; k < r.steps(); ++k) {
    if (r.traces[0][k].state.y > r.traces[1][k].state.y) {
      r.passing_step = k;
      break;
    }
  }
  return r;
}

StoredTrialSummary read_trace_summary(std::istream& in) {
  StoredTrialSummary s;
  try {
    const json j = json::parse(in);
    s.scenario = j.at("scenario").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.end_state = end_state_from_string(j.at("end_state").get<std::string>());
    if (!j.at("passing_step").is_null()) s.passing_step = j.at("passing_step").get<int>();
    const auto& m = j.at("metrics");
    s.switches = {m.at("switches").at(0).get<int>(), m.at("switches").at(1).get<int>()};
    s.salsa = m.at("salsa").get<bool>();
  } catch (const json::exception& e) {
    throw TraceError(std::string("trace summary: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw TraceError(std::string("trace summary: ") + e.what());
  }
  return s;
}

}  // namespace sidewalk
