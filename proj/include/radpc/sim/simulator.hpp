#pragma once

#include <cstdint>
#include <vector>

#include "radpc/sim/lidar.hpp"
#include "radpc/sim/radar_model.hpp"

namespace radpc {

struct TrajectoryConfig {
  double cruise_speed = 0.5;        // m/s
  double accel_limit = 1.0;         // m/s^2
  double yaw_rate_limit = 1.5;      // rad/s
  double heading_gain = 2.5;        // P gain on heading error
  double arrival_tolerance = 0.02;  // m
  double capture_radius = 0.30;     // m, waypoint advance on closest approach
  double initial_speed = -1.0;      // < 0 starts at cruise speed
  double max_duration = 600.0;      // s, safety stop
  int min_frames = 1;
};

struct OdometryNoise {
  double speed_sigma = 0.02;      // m/s per sample
  double yaw_rate_sigma = 0.01;   // rad/s per sample
};

struct SimConfig {
  double radar_rate = 20.0;  // Hz, also the record rate
  double lidar_rate = 20.0;  // Hz, lidar attached every radar_rate/lidar_rate frames
  RadarModelConfig radar;
  LidarConfig lidar;
  TrajectoryConfig trajectory;
  OdometryNoise odometry;
  std::vector<RadarSensorConfig> sensors;
  std::uint64_t seed = 0;
};

/// Front radar looking along +x and a rear radar rotated by pi, together
/// covering 360 degrees.
std::vector<RadarSensorConfig> default_sensor_pair();

/// One time-synchronized record. Odometry carries the measured (noisy) body
/// velocity and yaw rate plus the pose dead-reckoned from those
/// measurements; gt_pose is the true vehicle pose.
struct SimFrameRecord {
  double t = 0.0;
  std::vector<RadarFrame> radar;  // one per sensor, sensor frame
  VehicleState odometry;
  Pose2D gt_pose;
  std::vector<Vec2> lidar;  // vehicle frame; empty on frames without a scan
};

struct SimDataset {
  SimConfig config;
  World world;  // initial state (actors at t = 0)
  std::vector<Vec2> waypoints;
  std::vector<SimFrameRecord> frames;
};

/// Drive the unicycle through the waypoints with bounded acceleration,
/// recording radar, lidar, odometry and ground truth at the radar rate.
/// Deterministic for a fixed config seed. Waypoints must lie inside the
/// world extent (ConfigError otherwise); the path is assumed collision-free.
SimDataset simulate_trajectory(const World& world, const std::vector<Vec2>& waypoints,
                               const SimConfig& cfg);

}  // namespace radpc
