#include "uavroute/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace uavroute::routing {

using topology::ContactSnapshot;
using topology::PositionSet;

const char* to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Delivered:
      return "Delivered";
    case SessionStatus::StuckNoProgress:
      return "StuckNoProgress";
    case SessionStatus::LinkBroken:
      return "LinkBroken";
  }
  return "?";
}

std::optional<NodeId> greedy_next_hop(const ContactSnapshot& snap, NodeId current,
                                      NodeId dest, PositionSet set) {
  if (dest >= snap.size()) throw std::out_of_range("greedy_next_hop: dest");
  return greedy_next_hop(snap, current, dest, snap.positions(set)[dest], set);
}

std::optional<NodeId> greedy_next_hop(const ContactSnapshot& snap, NodeId current,
                                      NodeId dest, Vec2 dest_pos, PositionSet set) {
  if (current == dest) throw std::invalid_argument("greedy_next_hop: current == dest");
  const std::vector<NodeId> nbrs = snap.neighbors(current, set);
  if (std::binary_search(nbrs.begin(), nbrs.end(), dest)) return dest;

  const auto& pts = snap.positions(set);
  const double own = distance(pts[current], dest_pos);
  std::optional<NodeId> best;
  double best_dist = own;
  for (NodeId j : nbrs) {
    const double dj = distance(pts[j], dest_pos);
    if (dj < best_dist) {
      best_dist = dj;
      best = j;
    }
  }
  return best;
}

namespace {

void finish(SessionOutcome& out, SessionStatus status) {
  out.status = status;
  out.hop_count = out.hops.size();
  out.total_distance = 0.0;
  out.total_power = 0.0;
  for (const HopRecord& h : out.hops) {
    out.total_distance += h.tx_distance;
    out.total_power += h.tx_distance * h.tx_distance;
  }
}

// Advances the network one step and transmits holder -> next on the true
// positions at the new time. Returns false if the link broke.
bool transmit(mobility::MobileNetwork& net, NodeId holder, NodeId next,
              NodeId dest, double range, SessionOutcome& out) {
  net.advance();
  const auto& nodes = net.nodes();
  const Vec2 from = nodes[holder].position;
  const Vec2 to = nodes[next].position;
  const Vec2 target = nodes[dest].position;
  const double tx = distance(from, to);
  if (tx > range) return false;
  out.hops.push_back({holder, next, tx, distance(from, target) - distance(to, target),
                      net.time()});
  return true;
}

}  // namespace

SessionOutcome route_greedy(mobility::MobileNetwork& net, NodeId source,
                            NodeId dest, const GreedyOptions& opts, Rng& noise_rng) {
  if (source == dest) throw std::invalid_argument("route_greedy: source == dest");
  if (source >= net.size() || dest >= net.size()) {
    throw std::out_of_range("route_greedy: node index");
  }
  const std::size_t max_hops =
      opts.max_hops > 0 ? static_cast<std::size_t>(opts.max_hops) : 4 * net.size();

  SessionOutcome out;
  out.source = source;
  out.destination = dest;
  const std::vector<Vec2> frozen = net.true_positions();
  out.initial_distance = distance(frozen[source], frozen[dest]);

  NodeId holder = source;
  while (holder != dest) {
    if (out.hops.size() >= max_hops) {
      finish(out, SessionStatus::StuckNoProgress);
      return out;
    }
    std::vector<Vec2> view = opts.predictive ? net.predicted_positions(noise_rng) : frozen;
    const Vec2 dest_pos =
        opts.predictive && opts.refresh_destination ? view[dest] : frozen[dest];
    const ContactSnapshot snap(net.time(), net.true_positions(), std::move(view),
                               opts.range);
    const auto next = greedy_next_hop(snap, holder, dest, dest_pos, PositionSet::Predicted);
    if (!next) {
      finish(out, SessionStatus::StuckNoProgress);
      return out;
    }
    if (!transmit(net, holder, *next, dest, opts.range, out)) {
      finish(out, SessionStatus::LinkBroken);
      return out;
    }
    holder = *next;
  }
  finish(out, SessionStatus::Delivered);
  return out;
}

std::optional<Path> route_dijkstra(const ContactSnapshot& snap, NodeId source,
                                   NodeId dest, PathWeight weight, PositionSet set) {
  const std::size_t n = snap.size();
  if (source >= n || dest >= n) throw std::out_of_range("route_dijkstra: node index");
  if (source == dest) throw std::invalid_argument("route_dijkstra: source == dest");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<NodeId> parent(n, n);
  std::vector<bool> settled(n, false);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[source] = 0.0;
  frontier.push({0.0, source});

  while (!frontier.empty()) {
    const auto [du, u] = frontier.top();
    frontier.pop();
    if (settled[u]) continue;
    settled[u] = true;
    if (u == dest) break;
    for (NodeId v : snap.neighbors(u, set)) {
      if (settled[v]) continue;
      const double len = snap.distance(u, v, set);
      const double w = weight == PathWeight::Distance ? len : len * len;
      if (du + w < dist[v]) {
        dist[v] = du + w;
        parent[v] = u;
        frontier.push({dist[v], v});
      }
    }
  }
  if (!settled[dest]) return std::nullopt;

  Path path;
  path.weight = dist[dest];
  for (NodeId v = dest; v != source; v = parent[v]) path.nodes.push_back(v);
  path.nodes.push_back(source);
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

SessionOutcome execute_path(mobility::MobileNetwork& net, std::span<const NodeId> path,
                            double range) {
  if (path.size() < 2) throw std::invalid_argument("execute_path: path too short");
  for (NodeId v : path) {
    if (v >= net.size()) throw std::out_of_range("execute_path: node index");
  }
  SessionOutcome out;
  out.source = path.front();
  out.destination = path.back();
  out.initial_distance =
      distance(net.nodes()[out.source].position, net.nodes()[out.destination].position);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!transmit(net, path[k], path[k + 1], out.destination, range, out)) {
      finish(out, SessionStatus::LinkBroken);
      return out;
    }
  }
  finish(out, SessionStatus::Delivered);
  return out;
}

}  // namespace uavroute::routing
