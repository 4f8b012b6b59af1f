#include "radpc/preprocess/preprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace radpc {

std::vector<RadarDetection> fuse_frames(const std::vector<RadarFrame>& frames,
                                        const SensorExtrinsics& extrinsics,
                                        std::vector<Vec2>* origins) {
  std::vector<RadarDetection> fused;
  if (origins) origins->clear();
  for (const RadarFrame& frame : frames) {
    const Pose2D& mount = extrinsics.mount(frame.sensor_id);
    for (const RadarDetection& d : frame.detections) {
      RadarDetection out = transform_detection(d, mount);
      out.dz = 0.0;
      fused.push_back(out);
      if (origins) origins->push_back(mount.translation());
    }
  }
  return fused;
}

std::vector<RadarDetection> filter_min_range(const std::vector<RadarDetection>& detections,
                                             double min_range) {
  std::vector<RadarDetection> kept;
  kept.reserve(detections.size());
  for (const RadarDetection& d : detections) {
    if (d.range() >= min_range) kept.push_back(d);
  }
  return kept;
}

double expected_static_velocity(const Vec2& q, const Vec2& v) {
  const double n = q.norm();
  if (n <= 0.0) throw std::domain_error("expected_static_velocity: detection at the sensor origin");
  return (-q / n).dot(v);
}

SplitResult split_dynamic_static(const std::vector<RadarDetection>& detections,
                                 const VehicleState& vehicle,
                                 double threshold,
                                 std::span<const Vec2> sensor_origins) {
  SplitResult result;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const RadarDetection& d = detections[i];
    const Vec2 origin = i < sensor_origins.size() ? sensor_origins[i] : Vec2::Zero();
    const Vec2 q = d.position() - origin;
    // Range-zero returns have no line of sight; fall back to a zero
    // prediction instead of rejecting the frame.
    const double expected = q.norm() > 1e-12 ? expected_static_velocity(q, vehicle.v) : 0.0;
    if (std::abs(expected - d.dv) > threshold) {
      result.dynamic_detections.push_back(d);
    } else {
      result.static_detections.push_back(d);
    }
  }
  return result;
}

}  // namespace radpc
