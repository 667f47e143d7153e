#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sidewalk/simulator.hpp"

namespace sidewalk {

/// Bad key, bad value or malformed configuration text.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Batch settings stored alongside the parameters so that a written config
/// reproduces the run it came from.
struct RunSettings {
  std::string scenario;  // built-in name, custom name or "all"
  int trials = 100;
  std::uint64_t seed = 1;
};

/// Parsed configuration file. Top-level `key = value` lines set ModelParams
/// fields; a [scenario] section with [pedestrian.0] / [pedestrian.1]
/// subsections describes a custom encounter; [run] holds batch settings.
struct ConfigFile {
  ModelParams params;
  std::optional<Scenario> scenario;
  std::optional<RunSettings> run;
};

/// Names of every ModelParams field accepted in config files and overrides.
const std::vector<std::string>& param_keys();

/// Sets one ModelParams field from its text form.
void set_param(ModelParams& p, const std::string& key, const std::string& value);
std::string get_param(const ModelParams& p, const std::string& key);

/// Applies a `key=value` override.
void apply_override(ModelParams& p, const std::string& assignment);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

ConfigFile parse_config(std::istream& in);
ConfigFile load_config(const std::string& path);

std::string format_config(const ConfigFile& config);
void write_config(const std::string& path, const ConfigFile& config);

}  // namespace sidewalk
