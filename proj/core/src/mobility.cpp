#include "uavroute/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "uavroute/errors.hpp"

namespace uavroute::mobility {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reflection of an unconstrained coordinate into [0, side]. The result is
// value = offset + sign * u, an element of the reflection group generated by
// the two walls, so the same map can be applied to orbit centers.
struct Fold {
  double value;
  double sign;
  double offset;
};

Fold fold(double u, double side) {
  if (u >= 0.0 && u <= side) return {u, 1.0, 0.0};
  const double period = 2.0 * side;
  double m = std::fmod(u, period);
  if (m < 0.0) m += period;
  if (m <= side) return {std::clamp(m, 0.0, side), 1.0, m - u};
  const double v = period - m;
  return {std::clamp(v, 0.0, side), -1.0, v + u};
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double draw_exponential(double mean, Rng& rng) {
  if (mean <= 0.0) return 0.0;
  return std::exponential_distribution<double>(1.0 / mean)(rng);
}

double draw_uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void renew(NodeState& state, const MobilityConfig& cfg, Rng& rng) {
  if (std::bernoulli_distribution(cfg.transition_prob)(rng)) {
    state.mode = state.mode == MobilityMode::Linear ? MobilityMode::Circular
                                                    : MobilityMode::Linear;
  }
  draw_params(state, cfg, rng);
}

}  // namespace

const char* to_string(MobilityMode mode) {
  return mode == MobilityMode::Linear ? "linear" : "circular";
}

void MobilityConfig::validate() const {
  if (!(mean_speed >= 0.0)) throw ConfigError("mobility: mean_speed must be >= 0");
  if (!(mean_wait > 0.0)) throw ConfigError("mobility: mean_wait must be > 0");
  if (!(transition_prob >= 0.0 && transition_prob <= 1.0)) {
    throw ConfigError("mobility: transition_prob must lie in [0, 1]");
  }
  if (!(area_side > 0.0)) throw ConfigError("mobility: area_side must be > 0");
  if (!(time_step > 0.0)) throw ConfigError("mobility: time_step must be > 0");
  if (!(prediction_noise_var >= 0.0)) {
    throw ConfigError("mobility: prediction_noise_var must be >= 0");
  }
  if (!(prediction_horizon >= 0.0)) {
    throw ConfigError("mobility: prediction_horizon must be >= 0");
  }
  if (!(mean_turn_radius > 0.0)) {
    throw ConfigError("mobility: mean_turn_radius must be > 0");
  }
}

void draw_params(NodeState& state, const MobilityConfig& cfg, Rng& rng) {
  MobilityParams& p = state.params;
  p.speed = draw_exponential(cfg.mean_speed, rng);
  p.heading = draw_uniform(0.0, kTwoPi, rng);
  p.turn_radius = std::max(draw_exponential(cfg.mean_turn_radius, rng), 1e-9);
  p.phase = draw_uniform(0.0, kTwoPi, rng);
  const double direction = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
  p.angular_speed = direction * p.speed / p.turn_radius;
  p.center = state.position -
             p.turn_radius * Vec2{std::cos(p.phase), std::sin(p.phase)};
  p.sojourn = draw_exponential(cfg.mean_wait, rng);
  if (!(p.sojourn > 0.0)) p.sojourn = std::numeric_limits<double>::min();
  state.time_in_state = 0.0;
}

void advance_kinematics(NodeState& state, double area_side, double dt) {
  MobilityParams& p = state.params;
  if (p.speed == 0.0 || dt == 0.0) return;
  if (state.mode == MobilityMode::Linear) {
    const Vec2 v{p.speed * std::cos(p.heading), p.speed * std::sin(p.heading)};
    const Vec2 u = state.position + dt * v;
    const Fold fx = fold(u.x, area_side);
    const Fold fy = fold(u.y, area_side);
    state.position = {fx.value, fy.value};
    if (fx.sign < 0.0 || fy.sign < 0.0) {
      p.heading = wrap_angle(std::atan2(fy.sign * v.y, fx.sign * v.x));
    }
    return;
  }
  const double phase = p.phase + p.angular_speed * dt;
  const Vec2 u = p.center + p.turn_radius * Vec2{std::cos(phase), std::sin(phase)};
  const Fold fx = fold(u.x, area_side);
  const Fold fy = fold(u.y, area_side);
  state.position = {fx.value, fy.value};
  if (fx.sign > 0.0 && fy.sign > 0.0 && fx.offset == 0.0 && fy.offset == 0.0) {
    p.phase = wrap_angle(phase);
    return;
  }
  // Mirror the orbit: reflected center, reversed rotation per reflected axis.
  p.center = {fx.offset + fx.sign * p.center.x, fy.offset + fy.sign * p.center.y};
  p.angular_speed *= fx.sign * fy.sign;
  const double cx = fx.sign * std::cos(phase);
  const double cy = fy.sign * std::sin(phase);
  p.phase = wrap_angle(std::atan2(cy, cx));
}

NodeState step(const NodeState& state, const MobilityConfig& cfg, Rng& rng) {
  NodeState next = state;
  double remaining = cfg.time_step;
  while (remaining > 0.0) {
    const double until_renewal =
        std::max(next.params.sojourn - next.time_in_state, 0.0);
    const double dt = std::min(remaining, until_renewal);
    if (dt > 0.0) advance_kinematics(next, cfg.area_side, dt);
    next.time_in_state += dt;
    remaining -= dt;
    if (next.time_in_state >= next.params.sojourn) renew(next, cfg, rng);
  }
  return next;
}

Vec2 predict_position(const NodeState& state, double area_side, double horizon,
                      double noise_var, Rng& rng) {
  NodeState ahead = state;
  if (horizon > 0.0) advance_kinematics(ahead, area_side, horizon);
  Vec2 pos = ahead.position;
  if (noise_var > 0.0) {
    std::normal_distribution<double> noise(0.0, std::sqrt(noise_var));
    pos.x += noise(rng);
    pos.y += noise(rng);
  }
  return pos;
}

Rng node_stream(std::uint64_t seed, NodeId id) {
  return Rng(derive_seed(seed, 0x6e6f6465ULL, id));
}

std::vector<NodeState> init_deployment(const MobilityConfig& cfg, int n,
                                       std::uint64_t seed) {
  const MobileNetwork net = MobileNetwork::deploy(cfg, n, seed);
  return {net.nodes().begin(), net.nodes().end()};
}

MobileNetwork MobileNetwork::deploy(const MobilityConfig& cfg, int n,
                                    std::uint64_t seed) {
  cfg.validate();
  if (n < 2) throw ConfigError("deployment needs at least two nodes");
  MobileNetwork net;
  net.cfg_ = cfg;
  net.nodes_.reserve(static_cast<std::size_t>(n));
  net.streams_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng = node_stream(seed, static_cast<NodeId>(i));
    NodeState s;
    s.id = static_cast<NodeId>(i);
    s.position = {draw_uniform(0.0, cfg.area_side, rng),
                  draw_uniform(0.0, cfg.area_side, rng)};
    s.mode = std::bernoulli_distribution(0.5)(rng) ? MobilityMode::Linear
                                                   : MobilityMode::Circular;
    draw_params(s, cfg, rng);
    net.nodes_.push_back(s);
    net.streams_.push_back(std::move(rng));
  }
  return net;
}

void MobileNetwork::advance() {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i] = step(nodes_[i], cfg_, streams_[i]);
  }
  time_ += cfg_.time_step;
}

std::vector<Vec2> MobileNetwork::true_positions() const {
  std::vector<Vec2> out;
  out.reserve(nodes_.size());
  for (const NodeState& s : nodes_) out.push_back(s.position);
  return out;
}

std::vector<Vec2> MobileNetwork::predicted_positions(Rng& noise_rng) const {
  std::vector<Vec2> out;
  out.reserve(nodes_.size());
  for (const NodeState& s : nodes_) {
    out.push_back(predict_position(s, cfg_.area_side, cfg_.prediction_horizon,
                                   cfg_.prediction_noise_var, noise_rng));
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, MobileNetwork network, int steps) {
  out << "t,node_id,x,y,mode\n";
  char line[160];
  auto dump = [&] {
    for (const NodeState& s : network.nodes()) {
      std::snprintf(line, sizeof line, "%.6f,%zu,%.6f,%.6f,%s\n", network.time(),
                    s.id, s.position.x, s.position.y, to_string(s.mode));
      out << line;
    }
  };
  dump();
  for (int k = 0; k < steps; ++k) {
    network.advance();
    dump();
  }
}

}  // namespace uavroute::mobility
