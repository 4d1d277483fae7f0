#include "uavroute/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uavroute::topology {

ContactSnapshot::ContactSnapshot(double time, std::vector<Vec2> true_positions,
                                 std::vector<Vec2> predicted, double range)
    : time_(time),
      range_(range),
      true_(std::move(true_positions)),
      predicted_(std::move(predicted)) {
  if (!(range_ > 0.0)) throw std::invalid_argument("snapshot: range must be > 0");
  if (predicted_.empty()) predicted_ = true_;
  if (predicted_.size() != true_.size()) {
    throw std::invalid_argument("snapshot: position lists differ in length");
  }
  true_grid_.build(true_, range_);
  predicted_grid_.build(predicted_, range_);
}

const std::vector<Vec2>& ContactSnapshot::positions(PositionSet set) const {
  return set == PositionSet::True ? true_ : predicted_;
}

void ContactSnapshot::check(NodeId i) const {
  if (i >= true_.size()) {
    throw std::out_of_range("snapshot: node index " + std::to_string(i) +
                            " out of range");
  }
}

double ContactSnapshot::distance(NodeId i, NodeId j, PositionSet set) const {
  check(i);
  check(j);
  const auto& pts = positions(set);
  return uavroute::distance(pts[i], pts[j]);
}

std::vector<NodeId> ContactSnapshot::neighbors(NodeId i, PositionSet set) const {
  check(i);
  const auto& pts = positions(set);
  const Grid& grid = set == PositionSet::True ? true_grid_ : predicted_grid_;
  const Vec2 p = pts[i];
  const int c0 = grid.col_of(p.x);
  const int r0 = grid.row_of(p.y);
  std::vector<NodeId> out;
  for (int r = std::max(r0 - 1, 0); r <= std::min(r0 + 1, grid.rows - 1); ++r) {
    for (int c = std::max(c0 - 1, 0); c <= std::min(c0 + 1, grid.cols - 1); ++c) {
      for (NodeId j : grid.buckets[static_cast<std::size_t>(r * grid.cols + c)]) {
        if (j != i && uavroute::distance(p, pts[j]) <= range_) out.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ContactSnapshot::Grid::build(const std::vector<Vec2>& pts, double cell_size) {
  cell = cell_size;
  buckets.clear();
  if (pts.empty()) {
    cols = rows = 1;
    buckets.resize(1);
    return;
  }
  double max_x = pts.front().x;
  double max_y = pts.front().y;
  origin_x = pts.front().x;
  origin_y = pts.front().y;
  for (const Vec2& q : pts) {
    origin_x = std::min(origin_x, q.x);
    origin_y = std::min(origin_y, q.y);
    max_x = std::max(max_x, q.x);
    max_y = std::max(max_y, q.y);
  }
  // Cap the grid so a tiny range over a huge extent cannot explode memory;
  // a coarser cell is still correct because lookups scan adjacent cells.
  constexpr double kMaxCellsPerAxis = 4096.0;
  cell = std::max({cell, (max_x - origin_x) / kMaxCellsPerAxis,
                   (max_y - origin_y) / kMaxCellsPerAxis});
  cols = static_cast<int>(std::floor((max_x - origin_x) / cell)) + 1;
  rows = static_cast<int>(std::floor((max_y - origin_y) / cell)) + 1;
  buckets.resize(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows));
  for (NodeId j = 0; j < pts.size(); ++j) {
    const int c = col_of(pts[j].x);
    const int r = row_of(pts[j].y);
    buckets[static_cast<std::size_t>(r * cols + c)].push_back(j);
  }
}

int ContactSnapshot::Grid::col_of(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - origin_x) / cell)), 0, cols - 1);
}

int ContactSnapshot::Grid::row_of(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - origin_y) / cell)), 0, rows - 1);
}

}  // namespace uavroute::topology
