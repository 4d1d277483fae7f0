#pragma once

#include <vector>

#include "uavroute/types.hpp"

namespace uavroute::topology {

enum class PositionSet { True, Predicted };

/// Unit-disk contact graph at one instant. Holds both the true positions
/// (used for metric accounting) and the predicted positions (used for
/// forwarding decisions). Immutable once built.
class ContactSnapshot {
 public:
  /// `predicted` may be empty, in which case it aliases `true_positions`.
  ContactSnapshot(double time, std::vector<Vec2> true_positions,
                  std::vector<Vec2> predicted, double range);

  double time() const { return time_; }
  double range() const { return range_; }
  std::size_t size() const { return true_.size(); }
  const std::vector<Vec2>& positions(PositionSet set) const;

  /// All j != i within `range` of i (inclusive), ascending by index.
  /// Throws std::out_of_range for an invalid index.
  std::vector<NodeId> neighbors(NodeId i, PositionSet set) const;

  double distance(NodeId i, NodeId j, PositionSet set) const;

 private:
  struct Grid {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double cell = 1.0;
    int cols = 1;
    int rows = 1;
    std::vector<std::vector<NodeId>> buckets;

    void build(const std::vector<Vec2>& pts, double cell_size);
    int col_of(double x) const;
    int row_of(double y) const;
  };

  void check(NodeId i) const;

  double time_;
  double range_;
  std::vector<Vec2> true_;
  std::vector<Vec2> predicted_;
  Grid true_grid_;
  Grid predicted_grid_;
};

}  // namespace uavroute::topology
