#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uavroute/mobility.hpp"
#include "uavroute/topology.hpp"
#include "uavroute/types.hpp"

namespace uavroute::routing {

struct HopRecord {
  NodeId from = 0;
  NodeId to = 0;
  double tx_distance = 0.0;  // true link length at transmit time
  double progress = 0.0;     // reduction of the true distance to destination
  double time = 0.0;         // transmit time
};

enum class SessionStatus { Delivered, StuckNoProgress, LinkBroken };

const char* to_string(SessionStatus status);

struct SessionOutcome {
  NodeId source = 0;
  NodeId destination = 0;
  double initial_distance = 0.0;
  std::vector<HopRecord> hops;
  SessionStatus status = SessionStatus::StuckNoProgress;
  double total_distance = 0.0;
  double total_power = 0.0;  // sum of squared hop lengths
  std::size_t hop_count = 0;

  bool delivered() const { return status == SessionStatus::Delivered; }
};

/// Greedy forwarding choice of `current` toward `dest`, whose position is
/// taken from the selected position set. Returns `dest` if it is a
/// neighbor; otherwise the neighbor closest to the destination provided it
/// is strictly closer than `current`. Ties go to the lowest index.
std::optional<NodeId> greedy_next_hop(const topology::ContactSnapshot& snap,
                                      NodeId current, NodeId dest,
                                      topology::PositionSet set);

/// As above with an explicit destination position (the one carried in the
/// packet, which may be stale).
std::optional<NodeId> greedy_next_hop(const topology::ContactSnapshot& snap,
                                      NodeId current, NodeId dest, Vec2 dest_pos,
                                      topology::PositionSet set);

struct GreedyOptions {
  double range = 5000.0;
  bool predictive = true;
  bool refresh_destination = true;
  /// Session cap; 0 means 4 * N.
  int max_hops = 0;
};

/// Runs one packet journey on `net`, advancing it one time step per hop.
/// Decisions use predicted positions (predictive) or the positions frozen at
/// session start (static); link checks and accounting use true positions.
/// `noise_rng` feeds the prediction noise only.
SessionOutcome route_greedy(mobility::MobileNetwork& net, NodeId source,
                            NodeId dest, const GreedyOptions& opts, Rng& noise_rng);

enum class PathWeight { Distance, DistanceSquared };

struct Path {
  std::vector<NodeId> nodes;
  double weight = 0.0;
};

/// Minimum-weight path on the unit-disk graph of the selected position set,
/// or nullopt if `dest` is unreachable.
std::optional<Path> route_dijkstra(const topology::ContactSnapshot& snap,
                                   NodeId source, NodeId dest, PathWeight weight,
                                   topology::PositionSet set = topology::PositionSet::True);

/// Sends the packet along a precomputed path, one hop per time step, while
/// the network moves. A hop longer than `range` at transmit time breaks.
SessionOutcome execute_path(mobility::MobileNetwork& net,
                            std::span<const NodeId> path, double range);

}  // namespace uavroute::routing
