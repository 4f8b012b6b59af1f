#pragma once

#include <optional>
#include <vector>

#include "radpc/core/geometry.hpp"

namespace radpc {

/// Uniform-bucket index over a fixed 2D point set with exact nearest-neighbor
/// queries via expanding ring search.
class PointGrid2D {
 public:
  struct Hit {
    int index = -1;
    double distance = 0.0;
  };

  PointGrid2D() = default;
  PointGrid2D(std::vector<Vec2> points, double cell_size);

  /// Cell size scaled to the point density (roughly one point per bucket).
  static PointGrid2D with_auto_cell(std::vector<Vec2> points);

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec2>& points() const { return points_; }

  /// Exact nearest neighbor; nullopt only for an empty set.
  std::optional<Hit> nearest(const Vec2& q) const;

  /// Exact nearest neighbor within max_dist (inclusive).
  std::optional<Hit> nearest_within(const Vec2& q, double max_dist) const;

 private:
  std::optional<Hit> search(const Vec2& q, double max_dist) const;

  std::vector<Vec2> points_;
  double cell_ = 1.0;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<int>> buckets_;  // nx_ * ny_, row-major in y
};

}  // namespace radpc
