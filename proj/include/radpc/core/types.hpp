#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "radpc/core/geometry.hpp"

namespace radpc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One radar return. Positions are planar (dz stays 0 in the 2D sensor
/// configuration); dv is the radial velocity in m/s, negative when the
/// target closes on the sensor.
struct RadarDetection {
  double dx = 0.0;  // m
  double dy = 0.0;  // m
  double dz = 0.0;  // m, forced to 0 by preprocessing
  double dv = 0.0;  // m/s

  Vec2 position() const { return {dx, dy}; }
  double range() const { return std::hypot(dx, dy); }
};

/// Position rotated and translated by t. dv is carried through untouched:
/// radial velocity depends only on the originating sensor, which callers
/// track separately.
inline RadarDetection transform_detection(const RadarDetection& d, const Pose2D& t) {
  const Vec2 p = t.apply(d.position());
  return {p.x(), p.y(), d.dz, d.dv};
}

struct VehicleState {
  Pose2D pose;
  Vec2 v = Vec2::Zero();  // body-frame translational velocity, m/s
  double yaw_rate = 0.0;  // rad/s
};

/// Mount pose of each radar in the vehicle body frame.
class SensorExtrinsics {
 public:
  SensorExtrinsics() = default;

  void set(const std::string& sensor_id, const Pose2D& mount) { mounts_[sensor_id] = mount; }

  const Pose2D& mount(const std::string& sensor_id) const {
    auto it = mounts_.find(sensor_id);
    if (it == mounts_.end()) {
      throw ConfigError("no extrinsics configured for sensor '" + sensor_id + "'");
    }
    return it->second;
  }

  bool contains(const std::string& sensor_id) const { return mounts_.count(sensor_id) > 0; }
  std::size_t size() const { return mounts_.size(); }
  const std::map<std::string, Pose2D>& mounts() const { return mounts_; }

 private:
  std::map<std::string, Pose2D> mounts_;
};

}  // namespace radpc
