#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "uavroute/simharness.hpp"

namespace uavroute::config {

/// Flat `section.key -> value` map, ordered by key.
using KeyValues = std::map<std::string, std::string>;

/// Parses the experiment file format:
///
///   # comment
///   [network]
///   n_nodes = 10
///   range = 5km
///
/// Keys outside any section keep their bare name. Throws ConfigError with the
/// offending line number on malformed input.
KeyValues parse_file(std::istream& in);
KeyValues load_file(const std::string& path);

/// Splits `section.key=value`.
std::pair<std::string, std::string> parse_override(const std::string& text);

/// Length with an optional `m` or `km` suffix, returned in meters.
double parse_length(const std::string& text);
double parse_number(const std::string& text);
long long parse_integer(const std::string& text);
bool parse_bool(const std::string& text);

/// All keys accepted by apply(), in canonical order.
std::vector<std::string> known_keys();

/// Applies `kv` on top of `cfg`. Unknown keys and unparsable values throw
/// ConfigError. If `mobility.prediction_horizon` is absent it follows
/// `mobility.time_step`.
void apply(sim::ExperimentConfig& cfg, const KeyValues& kv);

/// Every known key with its current value, typed.
nlohmann::json to_json(const sim::ExperimentConfig& cfg);

}  // namespace uavroute::config
