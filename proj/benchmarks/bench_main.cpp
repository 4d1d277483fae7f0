#include <benchmark/benchmark.h>

#include <vector>

#include "uavroute/analysis.hpp"
#include "uavroute/geometry.hpp"
#include "uavroute/mobility.hpp"
#include "uavroute/routing.hpp"
#include "uavroute/simharness.hpp"
#include "uavroute/topology.hpp"

namespace {

using namespace uavroute;

void BM_LensArea(benchmark::State& state) {
  double d = 5000.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::lens_area({d, 5000.0, 3000.0}));
    d = d < 7000.0 ? d + 1.0 : 5000.0;
  }
}
BENCHMARK(BM_LensArea);

void BM_ExpectedProgress(benchmark::State& state) {
  const auto dist = geometry::ProgressDistribution::make(7500.0, 5000.0,
                                                         static_cast<int>(state.range(0)), 1e4);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::expected_progress(dist));
}
BENCHMARK(BM_ExpectedProgress)->Arg(10)->Arg(100)->Arg(10000);

void BM_BoundsReport(benchmark::State& state) {
  const analysis::NetworkParams net{10, 1e4, 5000.0};
  for (auto _ : state) benchmark::DoNotOptimize(analysis::bounds_report(net, 7500.0));
}
BENCHMARK(BM_BoundsReport);

void BM_SnapshotNeighbors(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  mobility::MobilityConfig cfg;
  const auto net = mobility::MobileNetwork::deploy(cfg, n, 1);
  for (auto _ : state) {
    const topology::ContactSnapshot snap(0.0, net.true_positions(), {}, 1000.0);
    std::size_t total = 0;
    for (NodeId i = 0; i < snap.size(); ++i) {
      total += snap.neighbors(i, topology::PositionSet::True).size();
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SnapshotNeighbors)->Arg(30)->Arg(300)->Arg(3000);

void BM_NetworkAdvance(benchmark::State& state) {
  mobility::MobilityConfig cfg;
  auto net = mobility::MobileNetwork::deploy(cfg, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) net.advance();
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NetworkAdvance)->Arg(10)->Arg(1000);

void BM_GreedySession(benchmark::State& state) {
  mobility::MobilityConfig cfg;
  const auto base = mobility::MobileNetwork::deploy(cfg, 30, 1);
  Rng noise(2);
  for (auto _ : state) {
    auto net = base;
    benchmark::DoNotOptimize(routing::route_greedy(net, 0, 1, {}, noise));
  }
}
BENCHMARK(BM_GreedySession);

void BM_DijkstraSession(benchmark::State& state) {
  mobility::MobilityConfig cfg;
  const auto base = mobility::MobileNetwork::deploy(cfg, 30, 1);
  for (auto _ : state) {
    auto net = base;
    const topology::ContactSnapshot snap(0.0, net.true_positions(), {}, 5000.0);
    const auto path = routing::route_dijkstra(snap, 0, 1, routing::PathWeight::DistanceSquared);
    if (path) benchmark::DoNotOptimize(routing::execute_path(net, path->nodes, 5000.0));
  }
}
BENCHMARK(BM_DijkstraSession);

void BM_Figure5Cell(benchmark::State& state) {
  sim::ExperimentConfig cfg = sim::figure_config(sim::Figure::SuccessVsSpeed, {});
  cfg.sweep.values = {50};
  cfg.runs = 10;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_experiment(cfg));
}
BENCHMARK(BM_Figure5Cell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
