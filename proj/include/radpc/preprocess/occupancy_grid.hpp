#pragma once

#include <deque>
#include <vector>

#include "radpc/core/types.hpp"

namespace radpc {

/// One occupied grid cell exposed to the graph layer: cell-center position
/// in the current vehicle frame plus the windowed hit probability.
struct GridNode {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double p_det = 0.0;
};

/// Sliding-window hit-probability raster over static detections. Each frame
/// of detections is stored anchored to a fixed world frame; rasterization is
/// redone against the newest pose on every update, so the window never
/// accumulates re-alignment error. p_det is hits/window, a cell counting at
/// most one hit per frame.
class OccupancyGrid {
 public:
  struct Params {
    double resolution = 0.20;  // m
    double extent_min = -5.0;  // m, both axes
    double extent_max = 5.0;   // m, both axes
    int window = 20;           // frames
  };

  OccupancyGrid();
  explicit OccupancyGrid(const Params& params);

  /// Push one frame of static detections given in the vehicle frame at
  /// `pose`, evict beyond the window, re-rasterize against `pose`.
  void update(const std::vector<RadarDetection>& static_detections, const Pose2D& pose);

  /// One node per cell with p_det > 0, in deterministic row-major order.
  std::vector<GridNode> extract_nodes() const;

  double p_det(int ix, int iy) const;

  int cells_per_axis() const { return n_; }
  int frame_count() const { return static_cast<int>(frames_.size()); }
  const Pose2D& reference_pose() const { return ref_pose_; }
  const Params& params() const { return params_; }

  void reset();

 private:
  void rasterize();

  Params params_;
  int n_ = 0;
  Pose2D ref_pose_;
  std::deque<std::vector<Vec2>> frames_;  // world-anchored points, oldest first
  std::vector<int> hits_;                 // n_ * n_, row-major in y
};

}  // namespace radpc
