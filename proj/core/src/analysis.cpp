#include "uavroute/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavroute/errors.hpp"
#include "uavroute/geometry.hpp"

namespace uavroute::analysis {
namespace {

void check_counts_and_area(const NetworkParams& net) {
  if (net.n_nodes < 2) throw DomainError("network: n_nodes must be >= 2");
  if (!(net.area_side > 0.0) || !std::isfinite(net.area_side)) {
    throw DomainError("network: area_side must be positive and finite");
  }
}

void check_distance(const NetworkParams& net, double d) {
  if (!(d > 0.0) || d > std::numbers::sqrt2 * net.area_side * (1.0 + 1e-12)) {
    throw DomainError("hop_bounds: distance outside (0, sqrt(2) L]");
  }
}

double mean_progress(const NetworkParams& net, double remaining) {
  return geometry::expected_progress(geometry::ProgressDistribution::make(
      remaining, net.range, net.n_nodes, net.area_side));
}

}  // namespace

void NetworkParams::validate() const {
  check_counts_and_area(*this);
  if (!(range > 0.0) || range > std::numbers::sqrt2 * area_side) {
    throw DomainError("network: range must be in (0, sqrt(2) L]");
  }
}

HopBounds hop_bounds(const NetworkParams& net, double d) {
  net.validate();
  check_distance(net, d);
  HopBounds b;
  b.upper = d / mean_progress(net, net.range) + 1.0;
  b.lower = d >= net.range ? (d - net.range) / mean_progress(net, d) + 1.0 : 1.0;
  if (!std::isfinite(b.upper) || !std::isfinite(b.lower)) {
    throw DomainError("hop_bounds: expected progress vanishes");
  }
  return b;
}

DistanceBounds expected_total_distance(const NetworkParams& net, double d) {
  const HopBounds hops = hop_bounds(net, d);
  return {0.5 * (d + hops.lower * net.range), 0.5 * (d + hops.upper * net.range)};
}

double isolation_probability(const NetworkParams& net) {
  check_counts_and_area(net);
  if (!(net.range >= 0.0)) throw DomainError("network: negative range");
  const double half_disk = 0.5 * std::numbers::pi * net.range * net.range;
  const double miss =
      std::clamp(1.0 - half_disk / (net.area_side * net.area_side), 0.0, 1.0);
  return std::pow(miss, net.n_nodes - 1);
}

double min_range_for_isolation(const NetworkParams& net, double epsilon) {
  check_counts_and_area(net);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("min_range_for_isolation: epsilon must lie in (0, 1)");
  }
  const double side2 = net.area_side * net.area_side;
  const double root = std::pow(epsilon, 1.0 / (net.n_nodes - 1));
  return std::sqrt(2.0 * side2 / std::numbers::pi * (1.0 - root));
}

double success_probability(const NetworkParams& net, double hops) {
  if (!(hops >= 0.0)) throw DomainError("success_probability: hops < 0");
  return std::pow(1.0 - isolation_probability(net), hops);
}

BoundsReport bounds_report(const NetworkParams& net, double d) {
  BoundsReport rep;
  rep.src_dst_distance = d;
  const HopBounds hops = hop_bounds(net, d);
  rep.hops_lower = hops.lower;
  rep.hops_upper = hops.upper;
  rep.dist_lower = 0.5 * (d + hops.lower * net.range);
  rep.dist_upper = 0.5 * (d + hops.upper * net.range);
  rep.p_isolation = isolation_probability(net);
  // More hops means more chances to hit an isolated relay.
  rep.p_success_lower = success_probability(net, hops.upper);
  rep.p_success_upper = success_probability(net, hops.lower);
  return rep;
}

}  // namespace uavroute::analysis
