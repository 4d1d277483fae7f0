// uavroute: figure datasets, analytical bounds and single-session traces.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "uavroute/analysis.hpp"
#include "uavroute/config.hpp"
#include "uavroute/errors.hpp"
#include "uavroute/mobility.hpp"
#include "uavroute/routing.hpp"
#include "uavroute/simharness.hpp"
#include "uavroute/topology.hpp"

namespace fs = std::filesystem;
using namespace uavroute;

namespace {

constexpr const char* kOutputDirEnv = "UAVROUTE_OUTPUT_DIR";

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  int workers = 0;  // 0: hardware concurrency
};

void add_common(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--config", opts.config_file, "Experiment file ([section] key = value)")
      ->check(CLI::ExistingFile);
  cmd.add_option("--set", opts.overrides, "Override one key, e.g. --set network.range=4km")
      ->allow_extra_args(false);
  cmd.add_option("--seed", opts.seed, "Master seed");
}

// Defaults, then the figure preset, then the file, then --set, then flags.
sim::ExperimentConfig resolve(const CommonOptions& opts, std::optional<sim::Figure> fig) {
  sim::ExperimentConfig cfg;
  if (fig) cfg = sim::figure_config(*fig, cfg);
  if (!opts.config_file.empty()) config::apply(cfg, config::load_file(opts.config_file));
  config::KeyValues kv;
  for (const std::string& text : opts.overrides) {
    auto [key, value] = config::parse_override(text);
    kv.insert_or_assign(std::move(key), std::move(value));
  }
  config::apply(cfg, kv);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.runs) cfg.runs = *opts.runs;
  cfg.validate();
  return cfg;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int run_figure(sim::Figure fig, const CommonOptions& opts, const std::string& out_flag) {
  const sim::ExperimentConfig cfg = resolve(opts, fig);
  const int workers = worker_count(opts.workers);
  const sim::ExperimentResult result = sim::run_experiment(cfg, workers);

  const fs::path dir = output_dir(out_flag);
  fs::create_directories(dir);
  const std::string stem = "fig" + std::to_string(static_cast<int>(fig));
  std::ostringstream csv;
  sim::write_csv(csv, result);
  write_file(dir / (stem + ".csv"), csv.str());

  nlohmann::json meta;
  meta["figure"] = static_cast<int>(fig);
  meta["config"] = config::to_json(cfg);
  meta["csv"] = stem + ".csv";
  write_file(dir / (stem + ".json"), meta.dump(2) + "\n");
  std::cerr << "wrote " << (dir / (stem + ".csv")).string() << "\n";
  return 0;
}

int run_bounds(int n, double side, double range, std::optional<double> d,
               std::optional<double> eps) {
  const analysis::NetworkParams net{n, side, range};
  net.validate();
  nlohmann::json out;
  out["n_nodes"] = n;
  out["area_side"] = side;
  out["range"] = range;
  out["p_isolation"] = analysis::isolation_probability(net);
  if (d) {
    const analysis::BoundsReport rep = analysis::bounds_report(net, *d);
    out["src_dst_distance"] = rep.src_dst_distance;
    out["hops"] = {{"lower", rep.hops_lower}, {"upper", rep.hops_upper}};
    out["distance"] = {{"lower", rep.dist_lower}, {"upper", rep.dist_upper}};
    out["success"] = {{"lower", rep.p_success_lower}, {"upper", rep.p_success_upper}};
  }
  if (eps) out["min_range"] = analysis::min_range_for_isolation(net, *eps);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_route(const CommonOptions& opts, const std::string& algorithm, NodeId src, NodeId dst) {
  const sim::ExperimentConfig cfg = resolve(opts, std::nullopt);
  const auto alg = sim::parse_algorithm(algorithm);
  if (!alg) throw ConfigError("unknown algorithm '" + algorithm + "'");
  const auto n = static_cast<NodeId>(cfg.net.n_nodes);
  if (src >= n || dst >= n || src == dst) {
    throw ConfigError("--src and --dst must be distinct indices below n_nodes");
  }
  auto net = mobility::MobileNetwork::deploy(cfg.mobility, cfg.net.n_nodes, cfg.seed);
  Rng noise(derive_seed(cfg.seed, 0x6e6f6973ULL));
  routing::SessionOutcome out;
  if (*alg == sim::Algorithm::DijkstraStatic) {
    const topology::ContactSnapshot snap(net.time(), net.true_positions(), {}, cfg.net.range);
    const auto path = routing::route_dijkstra(snap, src, dst, cfg.dijkstra_weight);
    if (path) {
      out = routing::execute_path(net, path->nodes, cfg.net.range);
    } else {
      out.source = src;
      out.destination = dst;
      out.initial_distance = snap.distance(src, dst, topology::PositionSet::True);
    }
  } else {
    routing::GreedyOptions g;
    g.range = cfg.net.range;
    g.predictive = *alg == sim::Algorithm::GreedyPredictive;
    g.refresh_destination = cfg.refresh_destination;
    g.max_hops = cfg.max_hops;
    out = routing::route_greedy(net, src, dst, g, noise);
  }

  std::printf("# %s %zu -> %zu, D = %.3f m\n", sim::to_string(*alg), src, dst,
              out.initial_distance);
  std::printf("t,from,to,tx_distance,progress\n");
  for (const routing::HopRecord& h : out.hops) {
    std::printf("%.10g,%zu,%zu,%.10g,%.10g\n", h.time, h.from, h.to, h.tx_distance, h.progress);
  }
  std::printf("# status=%s hops=%zu distance=%.10g power=%.10g\n",
              routing::to_string(out.status), out.hop_count, out.total_distance,
              out.total_power);
  return 0;
}

int run_trace(const CommonOptions& opts, int steps, const std::string& out_file) {
  const sim::ExperimentConfig cfg = resolve(opts, std::nullopt);
  const auto net = mobility::MobileNetwork::deploy(cfg.mobility, cfg.net.n_nodes, cfg.seed);
  if (out_file.empty()) {
    mobility::write_trajectory_csv(std::cout, net, steps);
    return 0;
  }
  std::ostringstream csv;
  mobility::write_trajectory_csv(csv, net, steps);
  write_file(out_file, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-greedy routing for UAV networks: bounds and Monte Carlo datasets"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_flag;

  struct FigureCommand {
    sim::Figure fig;
    const char* name;
    const char* help;
  };
  const FigureCommand figures[] = {
      {sim::Figure::DistanceVsNodes, "fig3", "Traveled distance vs number of nodes"},
      {sim::Figure::SuccessVsNodes, "fig4", "Delivery success vs number of nodes"},
      {sim::Figure::SuccessVsSpeed, "fig5", "Delivery success vs mean speed"},
      {sim::Figure::PowerVsSpeed, "fig6", "Transmission power vs mean speed"},
  };
  std::vector<std::pair<CLI::App*, sim::Figure>> fig_cmds;
  for (const FigureCommand& f : figures) {
    CLI::App* cmd = app.add_subcommand(f.name, f.help);
    add_common(*cmd, common);
    cmd->add_option("--runs", common.runs, "Independent runs per sweep value");
    cmd->add_option("--workers", common.workers, "Worker threads (0: all cores)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--output-dir", out_flag,
                    std::string("Output directory (default: $") + kOutputDirEnv + " or .)");
    fig_cmds.emplace_back(cmd, f.fig);
  }

  int n = 10;
  double side = 10000.0;
  double range = 5000.0;
  std::optional<double> dist;
  std::optional<double> eps;
  CLI::App* bounds = app.add_subcommand("bounds", "Analytical bounds as JSON");
  bounds->add_option("--n", n, "Number of nodes")->capture_default_str();
  bounds->add_option("--l", side, "Side of the square area [m]")->capture_default_str();
  bounds->add_option("--r", range, "Transmission range [m]")->capture_default_str();
  bounds->add_option("--d", dist, "Source-destination distance [m]");
  bounds->add_option("--eps", eps, "Target isolation probability for the minimum range");

  std::string algorithm = "GreedyPredictive";
  NodeId src = 0;
  NodeId dst = 1;
  CLI::App* route = app.add_subcommand("route", "Run one session and print the hop trace");
  add_common(*route, common);
  route->add_option("--algorithm", algorithm, "GreedyPredictive, GreedyStatic or DijkstraStatic")
      ->capture_default_str();
  route->add_option("--src", src, "Source node")->capture_default_str();
  route->add_option("--dst", dst, "Destination node")->capture_default_str();

  int steps = 100;
  std::string trace_out;
  CLI::App* trace = app.add_subcommand("trace", "Write node trajectories as CSV");
  add_common(*trace, common);
  trace->add_option("--steps", steps, "Time steps after t = 0")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  trace->add_option("-o,--output", trace_out, "Output file (default: stdout)");

  CLI::App* show = app.add_subcommand("config", "Print the effective configuration as JSON");
  add_common(*show, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [cmd, fig] : fig_cmds) {
      if (cmd->parsed()) return run_figure(fig, common, out_flag);
    }
    if (bounds->parsed()) return run_bounds(n, side, range, dist, eps);
    if (route->parsed()) return run_route(common, algorithm, src, dst);
    if (trace->parsed()) return run_trace(common, steps, trace_out);
    if (show->parsed()) {
      std::cout << config::to_json(resolve(common, std::nullopt)).dump(2) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "uavroute: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "uavroute: invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "uavroute: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
