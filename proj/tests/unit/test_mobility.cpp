#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "uavroute/errors.hpp"
#include "uavroute/mobility.hpp"

namespace uavroute::mobility {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

NodeState linear_node(Vec2 pos, double speed, double heading) {
  NodeState s;
  s.position = pos;
  s.mode = MobilityMode::Linear;
  s.params.speed = speed;
  s.params.heading = heading;
  s.params.sojourn = 1e9;
  return s;
}

NodeState circular_node(Vec2 pos, double speed, double radius, double phase, double dir) {
  NodeState s;
  s.position = pos;
  s.mode = MobilityMode::Circular;
  s.params.speed = speed;
  s.params.turn_radius = radius;
  s.params.phase = phase;
  s.params.angular_speed = dir * speed / radius;
  s.params.center = pos - radius * Vec2{std::cos(phase), std::sin(phase)};
  s.params.sojourn = 1e9;
  return s;
}

TEST(MobilityConfig, Validation) {
  MobilityConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.transition_prob = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.time_step = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.mean_wait = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(InitDeployment, DeterministicForSeed) {
  const MobilityConfig cfg;
  const auto a = init_deployment(cfg, 50, 123);
  const auto b = init_deployment(cfg, 50, 123);
  const auto c = init_deployment(cfg, 50, 124);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].position, b[i].position);
    EXPECT_EQ(a[i].mode, b[i].mode);
    EXPECT_EQ(a[i].params.speed, b[i].params.speed);
  }
  EXPECT_NE(a[0].position, c[0].position);
  EXPECT_THROW(init_deployment(cfg, 1, 1), ConfigError);
}

TEST(InitDeployment, UniformPositionsAndBalancedModes) {
  MobilityConfig cfg;
  cfg.area_side = 1e4;
  const int n = 10000;
  const auto nodes = init_deployment(cfg, n, 99);
  double sx = 0.0;
  double sy = 0.0;
  int linear = 0;
  std::vector<double> xs;
  for (const NodeState& s : nodes) {
    sx += s.position.x;
    sy += s.position.y;
    linear += s.mode == MobilityMode::Linear;
    xs.push_back(s.position.x / cfg.area_side);
  }
  EXPECT_NEAR(sx / n, 5000.0, 50.0);
  EXPECT_NEAR(sy / n, 5000.0, 50.0);
  EXPECT_NEAR(linear / static_cast<double>(n), 0.5, 0.02);

  // Kolmogorov-Smirnov against U(0, 1); asymptotic critical value at 0.01.
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    ks = std::max({ks, (i + 1.0) / n - xs[static_cast<std::size_t>(i)],
                   xs[static_cast<std::size_t>(i)] - static_cast<double>(i) / n});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(Step, LinearKinematics) {
  MobilityConfig cfg;
  cfg.time_step = 2.5;
  Rng rng(1);
  const NodeState next = step(linear_node({1000.0, 1000.0}, 40.0, 0.0), cfg, rng);
  EXPECT_NEAR(next.position.x, 1100.0, 1e-9);
  EXPECT_NEAR(next.position.y, 1000.0, 1e-9);
  EXPECT_DOUBLE_EQ(next.time_in_state, 2.5);
}

TEST(Step, SpecularReflectionAtWall) {
  MobilityConfig cfg;
  cfg.area_side = 1000.0;
  cfg.time_step = 1.0;
  Rng rng(1);
  // Heading 45 degrees into the right wall, 30 m past it after one step.
  const double v = 100.0;
  NodeState s = linear_node({950.0, 500.0}, v, std::numbers::pi / 4.0);
  const double dx = v * std::cos(std::numbers::pi / 4.0);
  const NodeState next = step(s, cfg, rng);
  EXPECT_NEAR(next.position.x, 1000.0 - (950.0 + dx - 1000.0), 1e-9);
  EXPECT_NEAR(next.position.y, 500.0 + dx, 1e-9);
  EXPECT_NEAR(next.params.heading, 3.0 * std::numbers::pi / 4.0, 1e-12);
}

TEST(Step, CircularOrbitClosesAfterOnePeriod) {
  MobilityConfig cfg;
  const double radius = 300.0;
  const double speed = 30.0;
  const double period = kTwoPi * radius / speed;
  cfg.time_step = period / 100.0;
  Rng rng(1);
  NodeState s = circular_node({5000.0, 5000.0}, speed, radius, 0.7, -1.0);
  const Vec2 start = s.position;
  for (int k = 0; k < 100; ++k) s = step(s, cfg, rng);
  EXPECT_LT(distance(s.position, start), 1e-6 * radius);
  // Every point of the orbit is at the turn radius from the center.
  EXPECT_NEAR(distance(s.position, s.params.center), radius, 1e-6);
}

TEST(Step, CircularReflectionKeepsOrbitRadius) {
  MobilityConfig cfg;
  cfg.area_side = 1000.0;
  cfg.time_step = 0.5;
  Rng rng(1);
  NodeState s = circular_node({990.0, 500.0}, 50.0, 200.0, 0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    s = step(s, cfg, rng);
    EXPECT_NEAR(distance(s.position, s.params.center), 200.0, 1e-6);
    EXPECT_GE(s.position.x, 0.0);
    EXPECT_LE(s.position.x, 1000.0);
  }
}

TEST(Step, RenewalRedrawsParameters) {
  MobilityConfig cfg;
  cfg.time_step = 1.0;
  Rng rng(4);
  NodeState s = linear_node({100.0, 100.0}, 10.0, 0.0);
  s.params.sojourn = 0.5;
  const NodeState next = step(s, cfg, rng);
  EXPECT_NE(next.params.sojourn, 0.5);
  EXPECT_LT(next.time_in_state, 1.0);
}

TEST(Step, PositionsStayInsideSquareUnderFuzz) {
  MobilityConfig cfg;
  cfg.area_side = 1000.0;
  cfg.mean_speed = 400.0;
  cfg.mean_wait = 5.0;
  cfg.mean_turn_radius = 150.0;
  cfg.time_step = 1.0;
  auto net = MobileNetwork::deploy(cfg, 4, 77);
  for (int k = 0; k < 250000; ++k) {
    net.advance();
    for (const NodeState& s : net.nodes()) {
      ASSERT_GE(s.position.x, 0.0);
      ASSERT_LE(s.position.x, cfg.area_side);
      ASSERT_GE(s.position.y, 0.0);
      ASSERT_LE(s.position.y, cfg.area_side);
    }
  }
}

TEST(Step, LongRunModeFractionIsHalf) {
  const MobilityConfig cfg;
  auto net = MobileNetwork::deploy(cfg, 10, 2024);
  long long linear = 0;
  long long total = 0;
  for (int k = 0; k < 100000; ++k) {
    net.advance();
    for (const NodeState& s : net.nodes()) {
      linear += s.mode == MobilityMode::Linear;
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(linear) / static_cast<double>(total), 0.5, 0.02);
}

TEST(DrawParams, ExponentialMeans) {
  const MobilityConfig cfg;
  Rng rng(31);
  NodeState s;
  s.position = {5000.0, 5000.0};
  double speed = 0.0;
  double sojourn = 0.0;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    draw_params(s, cfg, rng);
    speed += s.params.speed;
    sojourn += s.params.sojourn;
    EXPECT_GE(s.params.heading, 0.0);
    EXPECT_LT(s.params.heading, kTwoPi);
    EXPECT_GT(s.params.turn_radius, 0.0);
    EXPECT_NEAR(std::abs(s.params.angular_speed) * s.params.turn_radius, s.params.speed,
                1e-9 * (1.0 + s.params.speed));
  }
  EXPECT_NEAR(speed / draws / cfg.mean_speed, 1.0, 0.02);
  EXPECT_NEAR(sojourn / draws / cfg.mean_wait, 1.0, 0.02);
}

TEST(PredictPosition, NoiseFreeNoHorizonIsExact) {
  Rng rng(1);
  const NodeState s = linear_node({123.0, 456.0}, 50.0, 1.0);
  EXPECT_EQ(predict_position(s, 1e4, 0.0, 0.0, rng), s.position);
}

TEST(PredictPosition, LinearExtrapolation) {
  Rng rng(1);
  const double heading = 0.3;
  const NodeState s = linear_node({2000.0, 3000.0}, 50.0, heading);
  const Vec2 p = predict_position(s, 1e4, 4.0, 0.0, rng);
  EXPECT_NEAR(p.x, 2000.0 + 200.0 * std::cos(heading), 1e-9);
  EXPECT_NEAR(p.y, 3000.0 + 200.0 * std::sin(heading), 1e-9);
}

TEST(PredictPosition, NoiseVariancePerAxis) {
  Rng rng(8);
  const NodeState s = circular_node({5000.0, 5000.0}, 40.0, 400.0, 1.0, 1.0);
  const Vec2 clean = predict_position(s, 1e4, 3.0, 0.0, rng);
  const int samples = 100000;
  double sx = 0.0, sxx = 0.0, sy = 0.0, syy = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec2 p = predict_position(s, 1e4, 3.0, 10.0, rng) - clean;
    sx += p.x;
    sxx += p.x * p.x;
    sy += p.y;
    syy += p.y * p.y;
  }
  const double vx = (sxx - sx * sx / samples) / (samples - 1);
  const double vy = (syy - sy * sy / samples) / (samples - 1);
  EXPECT_NEAR(vx, 10.0, 0.5);
  EXPECT_NEAR(vy, 10.0, 0.5);
}

TEST(MobileNetwork, TrajectoriesAreBitwiseReproducible) {
  const MobilityConfig cfg;
  auto a = MobileNetwork::deploy(cfg, 20, 5);
  auto b = MobileNetwork::deploy(cfg, 20, 5);
  for (int k = 0; k < 1000; ++k) {
    a.advance();
    b.advance();
  }
  EXPECT_EQ(a.true_positions(), b.true_positions());
  EXPECT_DOUBLE_EQ(a.time(), 1000.0);
}

TEST(MobileNetwork, NodeStreamsAreIndependentOfNetworkSize) {
  // Node i's trajectory depends only on (seed, i).
  const MobilityConfig cfg;
  auto small = MobileNetwork::deploy(cfg, 5, 9);
  auto large = MobileNetwork::deploy(cfg, 30, 9);
  for (int k = 0; k < 200; ++k) {
    small.advance();
    large.advance();
  }
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(small.nodes()[i].position, large.nodes()[i].position);
  }
}

TEST(TrajectoryCsv, HeaderAndRows) {
  const MobilityConfig cfg;
  std::ostringstream out;
  write_trajectory_csv(out, MobileNetwork::deploy(cfg, 3, 1), 4);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,node_id,x,y,mode");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_TRUE(line.ends_with(",linear") || line.ends_with(",circular")) << line;
  }
  EXPECT_EQ(rows, 3 * 5);
}

}  // namespace
}  // namespace uavroute::mobility
