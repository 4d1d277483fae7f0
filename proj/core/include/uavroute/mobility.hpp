#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "uavroute/types.hpp"

namespace uavroute::mobility {

enum class MobilityMode { Linear, Circular };

const char* to_string(MobilityMode mode);

/// Parameters drawn at every Markov renewal and held until the next one.
/// `phase` and `center` describe the current point on the circular orbit;
/// `angular_speed` is signed (counter-clockwise positive).
struct MobilityParams {
  double speed = 0.0;
  double heading = 0.0;
  double turn_radius = 1.0;
  double phase = 0.0;
  double angular_speed = 0.0;
  Vec2 center{};
  double sojourn = 1.0;
};

struct NodeState {
  NodeId id = 0;
  Vec2 position{};
  MobilityMode mode = MobilityMode::Linear;
  MobilityParams params{};
  double time_in_state = 0.0;
};

struct MobilityConfig {
  double mean_speed = 50.0;         // m/s
  double mean_wait = 20.0;          // s, mean sojourn between renewals
  double transition_prob = 0.2;     // mode switch probability at a renewal
  double area_side = 10000.0;       // m
  double time_step = 1.0;           // s
  double prediction_noise_var = 10.0;  // m^2 per axis
  double prediction_horizon = 1.0;  // s
  double mean_turn_radius = 500.0;  // m

  void validate() const;
};

/// Draws a fresh parameter set for `state.mode` anchored at the current
/// position. All parameters are drawn regardless of mode so the number of
/// random draws per renewal is fixed.
void draw_params(NodeState& state, const MobilityConfig& cfg, Rng& rng);

/// Deterministic motion for `dt` seconds under the current parameters with
/// specular reflection at the square's walls. No renewals.
void advance_kinematics(NodeState& state, double area_side, double dt);

/// One time step, including any renewals whose sojourn expires inside it.
NodeState step(const NodeState& state, const MobilityConfig& cfg, Rng& rng);

/// Extrapolates the current mode `horizon` seconds ahead and adds zero-mean
/// Gaussian noise of variance `noise_var` to each coordinate.
Vec2 predict_position(const NodeState& state, double area_side, double horizon,
                      double noise_var, Rng& rng);

/// Deterministic per-node stream for node `id` of a deployment seeded by `seed`.
Rng node_stream(std::uint64_t seed, NodeId id);

/// n nodes uniform on [0, L]^2, each drawn from its own node_stream.
std::vector<NodeState> init_deployment(const MobilityConfig& cfg, int n,
                                       std::uint64_t seed);

/// The time-evolving network: node states plus the per-node random streams
/// that drive them.
class MobileNetwork {
 public:
  static MobileNetwork deploy(const MobilityConfig& cfg, int n,
                              std::uint64_t seed);

  /// Advances every node by one time step.
  void advance();

  double time() const { return time_; }
  const MobilityConfig& config() const { return cfg_; }
  std::span<const NodeState> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  std::vector<Vec2> true_positions() const;
  std::vector<Vec2> predicted_positions(Rng& noise_rng) const;

 private:
  MobilityConfig cfg_;
  std::vector<NodeState> nodes_;
  std::vector<Rng> streams_;
  double time_ = 0.0;
};

/// Writes `t,node_id,x,y,mode` rows for `steps` time steps (plus t = 0).
void write_trajectory_csv(std::ostream& out, MobileNetwork network, int steps);

}  // namespace uavroute::mobility
