#include "radpc/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radpc/core/types.hpp"

namespace radpc {

std::vector<RadarSensorConfig> default_sensor_pair() {
  RadarSensorConfig front;
  front.id = "front";
  front.mount = {0.10, 0.0, 0.0};
  front.fov = kPi;
  RadarSensorConfig rear;
  rear.id = "rear";
  rear.mount = {-0.10, 0.0, kPi};
  rear.fov = kPi;
  return {front, rear};
}

SimDataset simulate_trajectory(const World& world, const std::vector<Vec2>& waypoints,
                               const SimConfig& cfg) {
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (!world.contains(waypoints[i])) {
      throw ConfigError("waypoint " + std::to_string(i) + " lies outside the world extent");
    }
  }

  SimDataset dataset;
  dataset.config = cfg;
  if (dataset.config.sensors.empty()) dataset.config.sensors = default_sensor_pair();
  dataset.world = world;
  dataset.waypoints = waypoints;

  const double dt = 1.0 / cfg.radar_rate;
  const int lidar_every =
      std::max(1, static_cast<int>(std::round(cfg.radar_rate / cfg.lidar_rate)));
  const TrajectoryConfig& traj = cfg.trajectory;

  World live = world;
  Rng rng(cfg.seed);

  // Start at the first waypoint, facing the second when there is one.
  Pose2D pose;
  if (!waypoints.empty()) pose = {waypoints[0].x(), waypoints[0].y(), 0.0};
  std::size_t target = waypoints.size() > 1 ? 1 : waypoints.size();
  if (target < waypoints.size()) {
    const Vec2 to = waypoints[target] - pose.translation();
    if (to.norm() > 1e-9) pose = {pose.x, pose.y, std::atan2(to.y(), to.x())};
  }

  const bool has_target = target < waypoints.size();
  double speed = has_target ? (traj.initial_speed < 0.0 ? traj.cruise_speed : traj.initial_speed)
                            : 0.0;
  Pose2D odo_pose = pose;
  double prev_dist = std::numeric_limits<double>::infinity();

  const long max_steps = static_cast<long>(traj.max_duration * cfg.radar_rate);
  for (long step = 1; step <= max_steps; ++step) {
    const double t = step * dt;
    const bool driving = target < waypoints.size();

    // Waypoint-pursuit control.
    double yaw_rate = 0.0;
    double v_des = 0.0;
    if (driving) {
      const Vec2 to = waypoints[target] - pose.translation();
      const double heading_err = wrap_angle(std::atan2(to.y(), to.x()) - pose.psi);
      yaw_rate = std::clamp(traj.heading_gain * heading_err, -traj.yaw_rate_limit,
                            traj.yaw_rate_limit);
      v_des = traj.cruise_speed * std::clamp(std::cos(heading_err), 0.2, 1.0);
    }
    speed += std::clamp(v_des - speed, -traj.accel_limit * dt, traj.accel_limit * dt);

    pose = unicycle_step(pose, {speed, 0.0}, yaw_rate, dt);
    step_actors(live, dt, pose.translation(), 1.2);

    // Odometry: measured speed and yaw rate, dead-reckoned pose.
    const double v_meas = rng.normal(speed, cfg.odometry.speed_sigma);
    const double w_meas = rng.normal(yaw_rate, cfg.odometry.yaw_rate_sigma);
    odo_pose = unicycle_step(odo_pose, {v_meas, 0.0}, w_meas, dt);

    SimFrameRecord record;
    record.t = t;
    record.gt_pose = pose;
    record.odometry.pose = odo_pose;
    record.odometry.v = {v_meas, 0.0};
    record.odometry.yaw_rate = w_meas;

    const VehicleState truth{pose, {speed, 0.0}, yaw_rate};
    for (const RadarSensorConfig& sensor : dataset.config.sensors) {
      record.radar.push_back(simulate_radar_frame(live, truth, sensor, cfg.radar, t, rng));
    }
    if ((step - 1) % lidar_every == 0) {
      record.lidar = simulate_lidar_scan(live, pose, cfg.lidar);
    }
    dataset.frames.push_back(std::move(record));

    // Waypoint bookkeeping: advance on arrival or once the closest approach
    // inside the capture radius has passed.
    if (driving) {
      const double dist = (waypoints[target] - pose.translation()).norm();
      const bool arrived = dist < traj.arrival_tolerance ||
                           (dist < traj.capture_radius && dist > prev_dist + 1e-12);
      if (arrived) {
        ++target;
        prev_dist = std::numeric_limits<double>::infinity();
      } else {
        prev_dist = dist;
      }
    }
    if (target >= waypoints.size() &&
        static_cast<long>(dataset.frames.size()) >= traj.min_frames) {
      break;
    }
  }
  return dataset;
}

}  // namespace radpc
