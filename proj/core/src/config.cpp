#include "uavroute/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "uavroute/errors.hpp"

namespace uavroute::config {
namespace {

using sim::ExperimentConfig;
using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const char* weight_name(routing::PathWeight w) {
  return w == routing::PathWeight::Distance ? "distance" : "distance_squared";
}

struct Entry {
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<json(const ExperimentConfig&)> get;
};

int to_int(const std::string& v, long long lo) {
  const long long x = parse_integer(v);
  if (x < lo || x > 1000000000LL) throw ConfigError("integer out of range: " + v);
  return static_cast<int>(x);
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"network.n_nodes",
       [](ExperimentConfig& c, const std::string& v) { c.net.n_nodes = to_int(v, 2); },
       [](const ExperimentConfig& c) { return json(c.net.n_nodes); }},
      {"network.area_side",
       [](ExperimentConfig& c, const std::string& v) { c.net.area_side = parse_length(v); },
       [](const ExperimentConfig& c) { return json(c.net.area_side); }},
      {"network.range",
       [](ExperimentConfig& c, const std::string& v) { c.net.range = parse_length(v); },
       [](const ExperimentConfig& c) { return json(c.net.range); }},
      {"mobility.mean_speed",
       [](ExperimentConfig& c, const std::string& v) { c.mobility.mean_speed = parse_number(v); },
       [](const ExperimentConfig& c) { return json(c.mobility.mean_speed); }},
      {"mobility.mean_wait",
       [](ExperimentConfig& c, const std::string& v) { c.mobility.mean_wait = parse_number(v); },
       [](const ExperimentConfig& c) { return json(c.mobility.mean_wait); }},
      {"mobility.transition_prob",
       [](ExperimentConfig& c, const std::string& v) {
         c.mobility.transition_prob = parse_number(v);
       },
       [](const ExperimentConfig& c) { return json(c.mobility.transition_prob); }},
      {"mobility.time_step",
       [](ExperimentConfig& c, const std::string& v) { c.mobility.time_step = parse_number(v); },
       [](const ExperimentConfig& c) { return json(c.mobility.time_step); }},
      {"mobility.prediction_noise_var",
       [](ExperimentConfig& c, const std::string& v) {
         c.mobility.prediction_noise_var = parse_number(v);
       },
       [](const ExperimentConfig& c) { return json(c.mobility.prediction_noise_var); }},
      {"mobility.prediction_horizon",
       [](ExperimentConfig& c, const std::string& v) {
         c.mobility.prediction_horizon = parse_number(v);
       },
       [](const ExperimentConfig& c) { return json(c.mobility.prediction_horizon); }},
      {"mobility.mean_turn_radius",
       [](ExperimentConfig& c, const std::string& v) {
         c.mobility.mean_turn_radius = parse_length(v);
       },
       [](const ExperimentConfig& c) { return json(c.mobility.mean_turn_radius); }},
      {"routing.max_hops",
       [](ExperimentConfig& c, const std::string& v) { c.max_hops = to_int(v, 0); },
       [](const ExperimentConfig& c) { return json(c.max_hops); }},
      {"routing.refresh_destination",
       [](ExperimentConfig& c, const std::string& v) { c.refresh_destination = parse_bool(v); },
       [](const ExperimentConfig& c) { return json(c.refresh_destination); }},
      {"routing.dijkstra_weight",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "distance") {
           c.dijkstra_weight = routing::PathWeight::Distance;
         } else if (v == "distance_squared") {
           c.dijkstra_weight = routing::PathWeight::DistanceSquared;
         } else {
           throw ConfigError("dijkstra_weight must be distance or distance_squared");
         }
       },
       [](const ExperimentConfig& c) { return json(weight_name(c.dijkstra_weight)); }},
      {"experiment.runs",
       [](ExperimentConfig& c, const std::string& v) { c.runs = to_int(v, 1); },
       [](const ExperimentConfig& c) { return json(c.runs); }},
      {"experiment.sessions_per_run",
       [](ExperimentConfig& c, const std::string& v) { c.sessions_per_run = to_int(v, 1); },
       [](const ExperimentConfig& c) { return json(c.sessions_per_run); }},
      {"experiment.seed",
       [](ExperimentConfig& c, const std::string& v) {
         const long long s = parse_integer(v);
         if (s < 0) throw ConfigError("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       },
       [](const ExperimentConfig& c) { return json(c.seed); }},
      {"experiment.session_gap_steps",
       [](ExperimentConfig& c, const std::string& v) { c.session_gap_steps = to_int(v, 0); },
       [](const ExperimentConfig& c) { return json(c.session_gap_steps); }},
      {"experiment.sweep_param",
       [](ExperimentConfig& c, const std::string& v) { c.sweep.param = v; },
       [](const ExperimentConfig& c) { return json(c.sweep.param); }},
      {"experiment.sweep_values",
       [](ExperimentConfig& c, const std::string& v) {
         std::vector<double> values;
         for (const std::string& item : split_list(v)) values.push_back(parse_length(item));
         if (values.empty()) throw ConfigError("sweep_values must be non-empty");
         c.sweep.values = std::move(values);
       },
       [](const ExperimentConfig& c) { return json(c.sweep.values); }},
      {"experiment.algorithms",
       [](ExperimentConfig& c, const std::string& v) {
         std::vector<sim::Algorithm> algs;
         for (const std::string& item : split_list(v)) {
           const auto a = sim::parse_algorithm(item);
           if (!a) throw ConfigError("unknown algorithm '" + item + "'");
           if (std::find(algs.begin(), algs.end(), *a) == algs.end()) algs.push_back(*a);
         }
         if (algs.empty()) throw ConfigError("algorithms must be non-empty");
         c.algorithms = std::move(algs);
       },
       [](const ExperimentConfig& c) {
         json arr = json::array();
         for (sim::Algorithm a : c.algorithms) arr.push_back(sim::to_string(a));
         return arr;
       }},
  };
  return table;
}

}  // namespace

KeyValues parse_file(std::istream& in) {
  KeyValues kv;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    kv[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

KeyValues load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_file(in);
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not key=value");
  std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw ConfigError("override '" + text + "' has an empty key");
  return {std::move(key), trim(text.substr(eq + 1))};
}

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  return v;
}

double parse_length(const std::string& text) {
  std::string s = trim(text);
  double scale = 1.0;
  auto ends_with = [&](const char* suffix) {
    const std::string suf(suffix);
    return s.size() > suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends_with("km")) {
    scale = 1000.0;
    s.resize(s.size() - 2);
  } else if (ends_with("m")) {
    s.resize(s.size() - 1);
  }
  return parse_number(s) * scale;
}

long long parse_integer(const std::string& text) {
  const std::string s = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("expected an integer, got '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("expected a boolean, got '" + text + "'");
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const Entry& e : entries()) keys.emplace_back(e.key);
  return keys;
}

void apply(sim::ExperimentConfig& cfg, const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    const auto it = std::find_if(entries().begin(), entries().end(),
                                 [&](const Entry& e) { return key == e.key; });
    if (it == entries().end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
  if (!kv.contains("mobility.prediction_horizon") && kv.contains("mobility.time_step")) {
    cfg.mobility.prediction_horizon = cfg.mobility.time_step;
  }
  cfg.mobility.area_side = cfg.net.area_side;
}

nlohmann::json to_json(const sim::ExperimentConfig& cfg) {
  json out = json::object();
  for (const Entry& e : entries()) out[e.key] = e.get(cfg);
  return out;
}

}  // namespace uavroute::config
