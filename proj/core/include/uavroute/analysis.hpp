#pragma once

// Closed-form performance bounds for distance-greedy routing: expected hop
// count, end-to-end traveled distance, node isolation and delivery success.

namespace uavroute::analysis {

struct NetworkParams {
  int n_nodes = 10;
  double area_side = 10000.0;  // meters
  double range = 5000.0;       // meters

  /// Throws DomainError unless n_nodes >= 2, area_side > 0 and
  /// 0 < range <= sqrt(2) * area_side.
  void validate() const;
};

struct HopBounds {
  double lower = 1.0;
  double upper = 1.0;
};

struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct BoundsReport {
  double src_dst_distance = 0.0;
  double hops_lower = 1.0;
  double hops_upper = 1.0;
  double dist_lower = 0.0;
  double dist_upper = 0.0;
  double p_isolation = 0.0;
  double p_success_lower = 0.0;
  double p_success_upper = 0.0;
};

/// Bounds on the expected hop count for a destination `d` meters away.
/// The lower bound uses the expected progress at remaining distance d, the
/// upper bound the expected progress at remaining distance R.
HopBounds hop_bounds(const NetworkParams& net, double d);

/// Corridor for the expected total traveled distance, (d + E[n] R) / 2 with
/// E[n] replaced by each hop bound.
DistanceBounds expected_total_distance(const NetworkParams& net, double d);

/// Probability that a node has no relay in the destination-facing half of its
/// transmission disk. Accepts range == 0 (returns 1).
double isolation_probability(const NetworkParams& net);

/// Smallest range whose isolation probability does not exceed `epsilon`.
double min_range_for_isolation(const NetworkParams& net, double epsilon);

/// (1 - P_iso)^hops for a real-valued hop count.
double success_probability(const NetworkParams& net, double hops);

/// Everything above at one source-destination distance.
BoundsReport bounds_report(const NetworkParams& net, double d);

}  // namespace uavroute::analysis
