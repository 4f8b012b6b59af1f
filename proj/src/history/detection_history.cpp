#include "radpc/history/detection_history.hpp"

#include <stdexcept>

namespace radpc {

DetectionHistory::DetectionHistory(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("history capacity must be at least one frame");
}

void DetectionHistory::push(const std::vector<Vec2>& valid_points, const Pose2D& pose,
                            long frame_id) {
  if (has_last_ && frame_id <= last_id_) {
    throw std::invalid_argument("history frame ids must increase strictly");
  }
  std::vector<Vec2> world;
  world.reserve(valid_points.size());
  for (const Vec2& p : valid_points) {
    world.push_back(pose.apply(p));
  }
  frames_.emplace_back(frame_id, std::move(world));
  while (static_cast<int>(frames_.size()) > capacity_) {
    frames_.pop_front();
  }
  has_last_ = true;
  last_id_ = frame_id;
}

std::vector<Vec2> DetectionHistory::cloud(const Pose2D& current_pose) const {
  std::vector<Vec2> out;
  out.reserve(point_count());
  for (const auto& [id, points] : frames_) {
    for (const Vec2& w : points) {
      out.push_back(current_pose.apply_inverse(w));
    }
  }
  return out;
}

std::size_t DetectionHistory::point_count() const {
  std::size_t n = 0;
  for (const auto& [id, points] : frames_) n += points.size();
  return n;
}

std::vector<long> DetectionHistory::frame_ids() const {
  std::vector<long> ids;
  ids.reserve(frames_.size());
  for (const auto& [id, points] : frames_) ids.push_back(id);
  return ids;
}

void DetectionHistory::reset() {
  frames_.clear();
  has_last_ = false;
  last_id_ = 0;
}

}  // namespace radpc
