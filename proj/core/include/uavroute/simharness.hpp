#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavroute/analysis.hpp"
#include "uavroute/mobility.hpp"
#include "uavroute/routing.hpp"

namespace uavroute::sim {

enum class Algorithm { GreedyPredictive, GreedyStatic, DijkstraStatic };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::GreedyPredictive, Algorithm::GreedyStatic, Algorithm::DijkstraStatic};

const char* to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// Parameter swept by an experiment. Supported names: n_nodes, range,
/// area_side, mean_speed, mean_wait, transition_prob, prediction_noise_var,
/// prediction_horizon.
struct Sweep {
  std::string param = "n_nodes";
  std::vector<double> values{5, 10, 15, 20, 25, 30};
};

struct ExperimentConfig {
  analysis::NetworkParams net{};
  mobility::MobilityConfig mobility{};
  int runs = 100;
  int sessions_per_run = 10;
  Sweep sweep{};
  std::vector<Algorithm> algorithms{Algorithm::GreedyPredictive};
  std::uint64_t seed = 1;
  int max_hops = 0;  // 0 means 4 * N
  bool refresh_destination = true;
  routing::PathWeight dijkstra_weight = routing::PathWeight::Distance;
  int session_gap_steps = 10;  // network steps between consecutive sessions

  /// Throws ConfigError on invalid settings (every sweep cell is checked).
  void validate() const;
};

/// The configuration of a single sweep cell.
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, double value);

struct MetricStats {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t count = 0;
  std::optional<double> bound_lower;
  std::optional<double> bound_upper;
};

/// Aggregates for one (sweep value, algorithm). Success is over all
/// sessions; hops, distance and power are over delivered sessions.
struct CellResult {
  double sweep_value = 0.0;
  Algorithm algorithm = Algorithm::GreedyPredictive;
  MetricStats success;
  MetricStats hops;
  MetricStats distance;
  MetricStats power;
  MetricStats src_dst_distance;        // all sessions
  MetricStats delivered_src_dst_distance;
  std::size_t link_broken = 0;
  std::size_t stuck = 0;
};

struct ExperimentResult {
  std::string sweep_param;
  std::vector<CellResult> cells;  // sweep-major, algorithms in config order

  const CellResult* find(double sweep_value, Algorithm a) const;
};

/// Runs the Monte Carlo experiment with `workers` threads. The result is
/// bitwise identical for a fixed seed regardless of `workers`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 1);

enum class Figure { DistanceVsNodes = 3, SuccessVsNodes = 4, SuccessVsSpeed = 5,
                    PowerVsSpeed = 6 };

/// Applies a figure's canned sweep and algorithm set to `base`.
ExperimentConfig figure_config(Figure fig, ExperimentConfig base);

ExperimentResult figure3_dataset(const ExperimentConfig& base, int workers = 1);
ExperimentResult figure4_dataset(const ExperimentConfig& base, int workers = 1);
ExperimentResult figure5_dataset(const ExperimentConfig& base, int workers = 1);
ExperimentResult figure6_dataset(const ExperimentConfig& base, int workers = 1);

/// `sweep_param,value,algorithm,metric,mean,stderr,bound_lower,bound_upper`
void write_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace uavroute::sim
