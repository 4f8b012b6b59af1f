#pragma once

#include <deque>
#include <utility>
#include <vector>

#include "radpc/core/geometry.hpp"

namespace radpc {

/// Rolling buffer of classifier-validated points. Frames are stored anchored
/// to the world frame via the push pose, so re-reading under a new pose never
/// chains transforms. Single writer; cloud() returns an immutable copy.
class DetectionHistory {
 public:
  explicit DetectionHistory(int capacity = 10);

  /// Stores `valid_points` (vehicle frame at `pose`). frame_id must increase
  /// strictly; throws std::invalid_argument otherwise. The oldest frame is
  /// evicted once the buffer exceeds its capacity.
  void push(const std::vector<Vec2>& valid_points, const Pose2D& pose, long frame_id);

  /// All buffered points re-expressed in the frame of current_pose.
  std::vector<Vec2> cloud(const Pose2D& current_pose) const;

  int capacity() const { return capacity_; }
  int frame_count() const { return static_cast<int>(frames_.size()); }
  std::size_t point_count() const;
  std::vector<long> frame_ids() const;

  void reset();

 private:
  int capacity_;
  bool has_last_ = false;
  long last_id_ = 0;
  std::deque<std::pair<long, std::vector<Vec2>>> frames_;  // world-anchored
};

}  // namespace radpc
