#include "sidewalk/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace sidewalk {
namespace {

struct ParamEntry {
  std::string key;
  std::function<std::string(const ModelParams&)> get;
  std::function<void(ModelParams&, const std::string&)> set;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(const std::string& text) {
  const std::string s = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

ParamEntry real(std::string key, double ModelParams::*member) {
  return {std::move(key), [member](const ModelParams& p) { return format_double(p.*member); },
          [member](ModelParams& p, const std::string& v) { p.*member = parse_double(v); }};
}

const std::vector<ParamEntry>& entries() {
  static const std::vector<ParamEntry> table = [] {
    std::vector<ParamEntry> t{
        real("dt_sim", &ModelParams::dt_sim),
        real("dt_plan", &ModelParams::dt_plan),
        real("horizon", &ModelParams::horizon),
        real("v_init", &ModelParams::v_init),
        real("r_com", &ModelParams::r_com),
        real("a_e", &ModelParams::a_e),
        real("alpha", &ModelParams::alpha),
        real("beta", &ModelParams::beta),
        real("gamma_c", &ModelParams::gamma_c),
        real("zeta", &ModelParams::zeta),
        real("eta", &ModelParams::eta),
        real("delta_x", &ModelParams::delta_x),
        real("r_collision", &ModelParams::r_collision),
    };
    t.push_back({"lambda",
                 [](const ModelParams& p) {
                   std::string out;
                   for (std::size_t i = 0; i < p.lambda.size(); ++i) {
                     if (i) out += ", ";
                     out += format_double(p.lambda[i]);
                   }
                   return out;
                 },
                 [](ModelParams& p, const std::string& v) {
                   std::stringstream ss(v);
                   std::string item;
                   std::size_t i = 0;
                   while (std::getline(ss, item, ',')) {
                     if (i >= p.lambda.size()) throw ConfigError("lambda takes 7 values");
                     p.lambda[i++] = parse_double(item);
                   }
                   if (i != p.lambda.size()) throw ConfigError("lambda takes 7 values");
                 }});
    for (auto e : {real("replan_factor", &ModelParams::replan_factor),
                   real("retry_factor", &ModelParams::retry_factor),
                   real("timeout", &ModelParams::timeout),
                   real("sidewalk_width", &ModelParams::sidewalk_width),
                   real("sidewalk_length", &ModelParams::sidewalk_length),
                   real("sigma_floor", &ModelParams::sigma_floor),
                   real("fy_denominator", &ModelParams::fy_denominator)}) {
      t.push_back(std::move(e));
    }
    t.push_back({"renormalize_bias",
                 [](const ModelParams& p) { return std::string(p.renormalize_bias ? "true" : "false"); },
                 [](ModelParams& p, const std::string& v) { p.renormalize_bias = parse_bool(v); }});
    t.push_back({"plan_shift_mode", [](const ModelParams& p) { return to_string(p.plan_shift_mode); },
                 [](ModelParams& p, const std::string& v) {
                   try {
                     p.plan_shift_mode = plan_shift_mode_from_string(trim(v));
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                 }});
    t.push_back({"optimizer_iterations",
                 [](const ModelParams& p) { return std::to_string(p.optimizer_iterations); },
                 [](ModelParams& p, const std::string& v) {
                   p.optimizer_iterations = parse_integer<int>(v);
                 }});
    t.push_back(real("constraint_tol", &ModelParams::constraint_tol));
    t.push_back(real("dead_band", &ModelParams::dead_band));
    return t;
  }();
  return table;
}

const ParamEntry& entry(const std::string& key) {
  const auto& t = entries();
  const auto it = std::find_if(t.begin(), t.end(), [&](const ParamEntry& e) { return e.key == key; });
  if (it == t.end()) throw ConfigError("unknown parameter '" + key + "'");
  return *it;
}

struct PedestrianOverrides {
  std::optional<double> rho, x_offset, bias_left, bias_right;
};

}  // namespace

const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : entries()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

void set_param(ModelParams& p, const std::string& key, const std::string& value) {
  const auto& e = entry(trim(key));
  try {
    e.set(p, value);
  } catch (const ConfigError& err) {
    throw ConfigError(e.key + ": " + err.what());
  }
}

std::string get_param(const ModelParams& p, const std::string& key) { return entry(key).get(p); }

void apply_override(ModelParams& p, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  set_param(p, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile cfg;
  std::string section;
  std::optional<std::string> scenario_name;
  bool scenario_seen = false;
  std::array<PedestrianOverrides, 2> peds;
  RunSettings run;
  bool run_seen = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    auto fail = [&](const std::string& what) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + what);
    };

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "scenario" || section == "pedestrian.0" || section == "pedestrian.1") {
        scenario_seen = true;
      } else if (section == "run") {
        run_seen = true;
      } else {
        fail("unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (section.empty()) {
        set_param(cfg.params, key, value);
      } else if (section == "run") {
        if (key == "scenario") run.scenario = value;
        else if (key == "trials") run.trials = parse_integer<int>(value);
        else if (key == "seed") run.seed = parse_integer<std::uint64_t>(value);
        else fail("unknown run key '" + key + "'");
      } else if (section == "scenario") {
        if (key != "name") fail("unknown scenario key '" + key + "'");
        scenario_name = value;
      } else {
        auto& o = peds[section.back() - '0'];
        if (key == "rho") o.rho = parse_double(value);
        else if (key == "x_offset") o.x_offset = parse_double(value);
        else if (key == "bias_left") o.bias_left = parse_double(value);
        else if (key == "bias_right") o.bias_right = parse_double(value);
        else fail("unknown pedestrian key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(msg);
    }
  }

  if (scenario_seen) {
    const std::string name = scenario_name.value_or("custom");
    const auto& builtins = scenario_names();
    Scenario s;
    if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) {
      s = make_scenario(name);
    } else {
      s.name = name;
    }
    for (int i = 0; i < 2; ++i) {
      if (peds[i].rho) s.rho[i] = *peds[i].rho;
      if (peds[i].x_offset) s.x_offset[i] = *peds[i].x_offset;
      if (peds[i].bias_left) s.bias[i].m_left = *peds[i].bias_left;
      if (peds[i].bias_right) s.bias[i].m_right = *peds[i].bias_right;
    }
    cfg.scenario = s;
  }
  if (run_seen) cfg.run = run;
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return parse_config(in);
}

std::string format_config(const ConfigFile& config) {
  std::ostringstream out;
  for (const auto& e : entries()) out << e.key << " = " << e.get(config.params) << "\n";
  if (config.run) {
    out << "\n[run]\n"
        << "scenario = " << config.run->scenario << "\n"
        << "trials = " << config.run->trials << "\n"
        << "seed = " << config.run->seed << "\n";
  }
  if (config.scenario) {
    const Scenario& s = *config.scenario;
    out << "\n[scenario]\nname = " << s.name << "\n";
    for (int i = 0; i < 2; ++i) {
      out << "\n[pedestrian." << i << "]\n"
          << "rho = " << format_double(s.rho[i]) << "\n"
          << "x_offset = " << format_double(s.x_offset[i]) << "\n"
          << "bias_left = " << format_double(s.bias[i].m_left) << "\n"
          << "bias_right = " << format_double(s.bias[i].m_right) << "\n";
    }
  }
  return out.str();
}

void write_config(const std::string& path, const ConfigFile& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_config(config);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sidewalk
