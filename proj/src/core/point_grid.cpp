#include "radpc/core/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radpc {

PointGrid2D::PointGrid2D(std::vector<Vec2> points, double cell_size)
    : points_(std::move(points)), cell_(std::max(cell_size, 1e-9)) {
  if (points_.empty()) return;

  double max_x = points_[0].x();
  double max_y = points_[0].y();
  min_x_ = max_x;
  min_y_ = max_y;
  for (const Vec2& p : points_) {
    min_x_ = std::min(min_x_, p.x());
    min_y_ = std::min(min_y_, p.y());
    max_x = std::max(max_x, p.x());
    max_y = std::max(max_y, p.y());
  }
  nx_ = static_cast<int>(std::floor((max_x - min_x_) / cell_)) + 1;
  ny_ = static_cast<int>(std::floor((max_y - min_y_) / cell_)) + 1;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const int cx = std::min(nx_ - 1, static_cast<int>(std::floor((points_[i].x() - min_x_) / cell_)));
    const int cy = std::min(ny_ - 1, static_cast<int>(std::floor((points_[i].y() - min_y_) / cell_)));
    buckets_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(i);
  }
}

PointGrid2D PointGrid2D::with_auto_cell(std::vector<Vec2> points) {
  if (points.empty()) return PointGrid2D(std::move(points), 1.0);
  double min_x = points[0].x(), max_x = min_x;
  double min_y = points[0].y(), max_y = min_y;
  for (const Vec2& p : points) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double cell = span > 0.0 ? span / std::sqrt(static_cast<double>(points.size())) : 1.0;
  return PointGrid2D(std::move(points), std::max(cell, 1e-6));
}

std::optional<PointGrid2D::Hit> PointGrid2D::nearest(const Vec2& q) const {
  return search(q, std::numeric_limits<double>::infinity());
}

std::optional<PointGrid2D::Hit> PointGrid2D::nearest_within(const Vec2& q, double max_dist) const {
  return search(q, max_dist);
}

std::optional<PointGrid2D::Hit> PointGrid2D::search(const Vec2& q, double max_dist) const {
  if (points_.empty()) return std::nullopt;

  const int qx = static_cast<int>(std::floor((q.x() - min_x_) / cell_));
  const int qy = static_cast<int>(std::floor((q.y() - min_y_) / cell_));

  // Furthest ring that can hold any grid cell, possibly capped by max_dist.
  int limit = std::max(std::max(std::abs(qx), std::abs(qx - (nx_ - 1))),
                       std::max(std::abs(qy), std::abs(qy - (ny_ - 1))));
  if (std::isfinite(max_dist)) {
    limit = std::min(limit, static_cast<int>(max_dist / cell_) + 1);
  }

  Hit best;
  best.distance = std::numeric_limits<double>::infinity();

  for (int ring = 0; ring <= limit; ++ring) {
    // Cells at Chebyshev distance `ring` hold nothing closer than
    // (ring - 1) * cell, so a found best terminates the search.
    if (best.index >= 0 && static_cast<double>(ring - 1) * cell_ > best.distance) break;
    for (int cx = qx - ring; cx <= qx + ring; ++cx) {
      if (cx < 0 || cx >= nx_) continue;
      const bool x_edge = (cx == qx - ring || cx == qx + ring);
      for (int cy = qy - ring; cy <= qy + ring; ++cy) {
        if (cy < 0 || cy >= ny_) continue;
        if (!x_edge && cy != qy - ring && cy != qy + ring) continue;
        for (int idx : buckets_[static_cast<std::size_t>(cy) * nx_ + cx]) {
          const double d = (points_[idx] - q).norm();
          if (d < best.distance) {
            best.distance = d;
            best.index = idx;
          }
        }
      }
    }
  }

  if (best.index < 0 || best.distance > max_dist) return std::nullopt;
  return best;
}

}  // namespace radpc
