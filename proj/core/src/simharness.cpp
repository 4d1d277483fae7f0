#include "uavroute/simharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <thread>

#include "uavroute/errors.hpp"

namespace uavroute::sim {
namespace {

struct SessionSample {
  double src_dst = 0.0;
  routing::SessionStatus status = routing::SessionStatus::StuckNoProgress;
  double hops = 0.0;
  double distance = 0.0;
  double power = 0.0;
};

// samples[algorithm slot][session]
using RunSamples = std::vector<std::vector<SessionSample>>;

std::size_t slot_of(Algorithm a) { return static_cast<std::size_t>(a); }

routing::SessionOutcome run_session(const ExperimentConfig& cfg, Algorithm alg,
                                    mobility::MobileNetwork net, NodeId src,
                                    NodeId dst, Rng& noise_rng) {
  switch (alg) {
    case Algorithm::GreedyPredictive:
    case Algorithm::GreedyStatic: {
      routing::GreedyOptions opts;
      opts.range = cfg.net.range;
      opts.predictive = alg == Algorithm::GreedyPredictive;
      opts.refresh_destination = cfg.refresh_destination;
      opts.max_hops = cfg.max_hops;
      return routing::route_greedy(net, src, dst, opts, noise_rng);
    }
    case Algorithm::DijkstraStatic: {
      const topology::ContactSnapshot snap(net.time(), net.true_positions(), {},
                                           cfg.net.range);
      const auto path = routing::route_dijkstra(snap, src, dst, cfg.dijkstra_weight);
      if (!path) {
        routing::SessionOutcome out;
        out.source = src;
        out.destination = dst;
        out.initial_distance = snap.distance(src, dst, topology::PositionSet::True);
        out.status = routing::SessionStatus::StuckNoProgress;
        return out;
      }
      return routing::execute_path(net, path->nodes, cfg.net.range);
    }
  }
  throw std::logic_error("unknown algorithm");
}

RunSamples simulate_run(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  mobility::MobileNetwork net =
      mobility::MobileNetwork::deploy(cfg.mobility, cfg.net.n_nodes, run_seed);
  Rng pair_rng(derive_seed(run_seed, 0x70616972ULL));
  RunSamples samples(std::size(kAllAlgorithms));
  const auto n = static_cast<NodeId>(cfg.net.n_nodes);

  // Ordered pairs are drawn without replacement; once all n (n - 1) are used
  // the pool refills.
  std::set<std::pair<NodeId, NodeId>> used;
  for (int s = 0; s < cfg.sessions_per_run; ++s) {
    if (used.size() == n * (n - 1)) used.clear();
    NodeId src = 0;
    NodeId dst = 0;
    do {
      src = std::uniform_int_distribution<NodeId>(0, n - 1)(pair_rng);
      dst = std::uniform_int_distribution<NodeId>(0, n - 2)(pair_rng);
      if (dst >= src) ++dst;
    } while (!used.emplace(src, dst).second);
    for (Algorithm alg : cfg.algorithms) {
      Rng noise_rng(derive_seed(run_seed, 0x6e6f6973ULL, s, slot_of(alg)));
      // Each algorithm sees the same starting network state.
      mobility::MobileNetwork scratch = net;
      const auto out = run_session(cfg, alg, scratch, src, dst, noise_rng);
      samples[slot_of(alg)].push_back({out.initial_distance, out.status,
                                       static_cast<double>(out.hop_count),
                                       out.total_distance, out.total_power});
    }
    for (int k = 0; k < cfg.session_gap_steps; ++k) net.advance();
  }
  return samples;
}

template <typename Pick>
MetricStats summarize(const std::vector<const SessionSample*>& xs, Pick pick) {
  MetricStats m;
  m.count = xs.size();
  if (xs.empty()) return m;
  double sum = 0.0;
  for (const SessionSample* x : xs) sum += pick(*x);
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const SessionSample* x : xs) {
      const double dev = pick(*x) - m.mean;
      ss += dev * dev;
    }
    const double var = ss / static_cast<double>(xs.size() - 1);
    m.stderr_of_mean = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return m;
}

std::optional<analysis::BoundsReport> corridor(const analysis::NetworkParams& net,
                                               const MetricStats& mean_d) {
  if (mean_d.count == 0 || !(mean_d.mean > 0.0)) return std::nullopt;
  try {
    return analysis::bounds_report(net, mean_d.mean);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

CellResult aggregate(const ExperimentConfig& cell_cfg, double value, Algorithm alg,
                     const std::vector<RunSamples>& runs) {
  std::vector<const SessionSample*> all;
  std::vector<const SessionSample*> delivered;
  CellResult cell;
  cell.sweep_value = value;
  cell.algorithm = alg;
  for (const RunSamples& run : runs) {
    for (const SessionSample& s : run[slot_of(alg)]) {
      all.push_back(&s);
      if (s.status == routing::SessionStatus::Delivered) delivered.push_back(&s);
      if (s.status == routing::SessionStatus::LinkBroken) ++cell.link_broken;
      if (s.status == routing::SessionStatus::StuckNoProgress) ++cell.stuck;
    }
  }
  cell.success = summarize(all, [](const SessionSample& s) {
    return s.status == routing::SessionStatus::Delivered ? 1.0 : 0.0;
  });
  cell.src_dst_distance = summarize(all, [](const SessionSample& s) { return s.src_dst; });
  cell.delivered_src_dst_distance =
      summarize(delivered, [](const SessionSample& s) { return s.src_dst; });
  cell.hops = summarize(delivered, [](const SessionSample& s) { return s.hops; });
  cell.distance = summarize(delivered, [](const SessionSample& s) { return s.distance; });
  cell.power = summarize(delivered, [](const SessionSample& s) { return s.power; });

  if (auto rep = corridor(cell_cfg.net, cell.src_dst_distance)) {
    cell.success.bound_lower = rep->p_success_lower;
    cell.success.bound_upper = rep->p_success_upper;
  }
  if (auto rep = corridor(cell_cfg.net, cell.delivered_src_dst_distance)) {
    cell.hops.bound_lower = rep->hops_lower;
    cell.hops.bound_upper = rep->hops_upper;
    cell.distance.bound_lower = rep->dist_lower;
    cell.distance.bound_upper = rep->dist_upper;
  }
  return cell;
}

void write_number(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out << buf;
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::GreedyPredictive:
      return "GreedyPredictive";
    case Algorithm::GreedyStatic:
      return "GreedyStatic";
    case Algorithm::DijkstraStatic:
      return "DijkstraStatic";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, double value) {
  ExperimentConfig c = cfg;
  const std::string& p = cfg.sweep.param;
  if (p == "n_nodes") {
    if (value != std::round(value)) throw ConfigError("sweep n_nodes must be integral");
    c.net.n_nodes = static_cast<int>(value);
  } else if (p == "range") {
    c.net.range = value;
  } else if (p == "area_side") {
    c.net.area_side = value;
  } else if (p == "mean_speed") {
    c.mobility.mean_speed = value;
  } else if (p == "mean_wait") {
    c.mobility.mean_wait = value;
  } else if (p == "transition_prob") {
    c.mobility.transition_prob = value;
  } else if (p == "prediction_noise_var") {
    c.mobility.prediction_noise_var = value;
  } else if (p == "prediction_horizon") {
    c.mobility.prediction_horizon = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + p + "'");
  }
  c.mobility.area_side = c.net.area_side;
  return c;
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (sessions_per_run < 1) throw ConfigError("sessions_per_run must be >= 1");
  if (sweep.values.empty()) throw ConfigError("sweep values must be non-empty");
  if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
  if (max_hops < 0) throw ConfigError("max_hops must be >= 0");
  if (session_gap_steps < 0) throw ConfigError("session_gap_steps must be >= 0");
  for (double v : sweep.values) {
    const ExperimentConfig c = with_sweep_value(*this, v);
    try {
      c.net.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    c.mobility.validate();
  }
}

const CellResult* ExperimentResult::find(double sweep_value, Algorithm a) const {
  for (const CellResult& c : cells) {
    if (c.sweep_value == sweep_value && c.algorithm == a) return &c;
  }
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  const std::size_t cells = cfg.sweep.values.size();
  const std::size_t runs = static_cast<std::size_t>(cfg.runs);
  std::vector<ExperimentConfig> cell_cfgs;
  for (double v : cfg.sweep.values) cell_cfgs.push_back(with_sweep_value(cfg, v));

  std::vector<RunSamples> results(cells * runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < results.size(); task = next++) {
      const std::size_t k = task / runs;
      const std::size_t r = task % runs;
      // Run seeds ignore the sweep index: every cell sees the same deployments
      // and draws (common random numbers), so cell-to-cell differences
      // reflect the swept parameter rather than sampling noise.
      results[task] = simulate_run(cell_cfgs[k], derive_seed(cfg.seed, r));
    }
  };
  const int threads = std::max(1, workers);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentResult out;
  out.sweep_param = cfg.sweep.param;
  for (std::size_t k = 0; k < cells; ++k) {
    const std::vector<RunSamples> cell_runs(results.begin() + static_cast<std::ptrdiff_t>(k * runs),
                                            results.begin() + static_cast<std::ptrdiff_t>((k + 1) * runs));
    for (Algorithm alg : cfg.algorithms) {
      out.cells.push_back(aggregate(cell_cfgs[k], cfg.sweep.values[k], alg, cell_runs));
    }
  }
  return out;
}

ExperimentConfig figure_config(Figure fig, ExperimentConfig base) {
  switch (fig) {
    case Figure::DistanceVsNodes:
    case Figure::SuccessVsNodes:
      base.sweep = {"n_nodes", {5, 10, 15, 20, 25, 30}};
      base.algorithms = {Algorithm::GreedyPredictive};
      break;
    case Figure::SuccessVsSpeed:
      base.sweep = {"mean_speed", {10, 30, 50, 70, 100}};
      base.algorithms = {Algorithm::GreedyPredictive, Algorithm::GreedyStatic,
                         Algorithm::DijkstraStatic};
      base.dijkstra_weight = routing::PathWeight::Distance;
      break;
    case Figure::PowerVsSpeed:
      base.sweep = {"mean_speed", {10, 30, 50, 70, 100}};
      base.algorithms = {Algorithm::GreedyPredictive, Algorithm::DijkstraStatic};
      base.dijkstra_weight = routing::PathWeight::DistanceSquared;
      break;
  }
  return base;
}

ExperimentResult figure3_dataset(const ExperimentConfig& base, int workers) {
  return run_experiment(figure_config(Figure::DistanceVsNodes, base), workers);
}
ExperimentResult figure4_dataset(const ExperimentConfig& base, int workers) {
  return run_experiment(figure_config(Figure::SuccessVsNodes, base), workers);
}
ExperimentResult figure5_dataset(const ExperimentConfig& base, int workers) {
  return run_experiment(figure_config(Figure::SuccessVsSpeed, base), workers);
}
ExperimentResult figure6_dataset(const ExperimentConfig& base, int workers) {
  return run_experiment(figure_config(Figure::PowerVsSpeed, base), workers);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "sweep_param,value,algorithm,metric,mean,stderr,bound_lower,bound_upper\n";
  auto row = [&](const CellResult& c, const char* metric, const MetricStats& m) {
    out << result.sweep_param << ',';
    write_number(out, c.sweep_value);
    out << ',' << to_string(c.algorithm) << ',' << metric << ',';
    write_number(out, m.mean);
    out << ',';
    write_number(out, m.stderr_of_mean);
    out << ',';
    if (m.bound_lower) write_number(out, *m.bound_lower);
    out << ',';
    if (m.bound_upper) write_number(out, *m.bound_upper);
    out << '\n';
  };
  for (const CellResult& c : result.cells) {
    row(c, "success", c.success);
    row(c, "hops", c.hops);
    row(c, "distance", c.distance);
    row(c, "power", c.power);
    row(c, "src_dst_distance", c.src_dst_distance);
  }
}

}  // namespace uavroute::sim
