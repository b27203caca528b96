#pragma once

// Experiment configuration, dispatch and result records for the tensorlab
// command-line tool. Flags and JSON config files go through the same
// per-command parameter table, so both reject the same unknown keys.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tensorlab/io.hpp"

namespace tensorlab::cli {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Json, Csv, Text };

/// A malformed, missing or unknown configuration field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ValueKind { Int, Double, String, StringList };

struct ParamSpec {
  std::string key;
  ValueKind kind;
  /// Empty when the parameter has no default.
  Json default_value;
  std::string help;
};

const std::vector<std::string>& commands();
/// Command-specific parameters (without seed, output and format).
const std::vector<ParamSpec>& param_specs(const std::string& command);

struct Config {
  std::string command;
  /// Every declared parameter that is set or has a default, typed.
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::string output;
  Format format = Format::Json;

  Json echo() const;
};

/// From a flat JSON object: {"command": ..., "seed": ..., <params>}.
Config parse_config(const Json& j);
/// From raw flag strings (list parameters may repeat).
Config config_from_flags(const std::string& command,
                         const std::vector<std::pair<std::string, std::vector<std::string>>>& flags);

std::string to_string(Format f);
Format parse_format(const std::string& s);

struct Record {
  Json config;
  std::string timestamp;
  double wall_time_s = 0.0;
  Json payload;

  Json to_json() const;
};

/// Deterministic payloads for the config. `done` holds earlier records for
/// resuming a scan; cells found there are skipped.
std::vector<Json> compute_payloads(const Config& config, const std::vector<Json>& done = {});

/// Computes, reading earlier records from the output file when resuming.
std::vector<Record> run(const Config& config);

/// JSON lines, CSV (tabular payloads only) or aligned text.
std::string emit(const std::vector<Record>& records, Format format);

/// Writes to config.output (JSON appends, CSV and text replace) or stdout.
void write_output(const Config& config, const std::string& text);

}  // namespace tensorlab::cli
