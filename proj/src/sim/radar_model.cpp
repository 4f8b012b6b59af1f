#include "radpc/sim/radar_model.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace radpc {

namespace {

struct BinKey {
  int az = 0;
  int range = 0;
  auto operator<=>(const BinKey&) const = default;
};

struct Candidate {
  Vec2 position_sensor = Vec2::Zero();  // quantized, sensor frame
  Vec2 position_world = Vec2::Zero();   // quantized, world frame
  double dv = 0.0;
  bool dynamic = false;
};

double quantize(double value, double resolution) {
  return std::round(value / resolution) * resolution;
}

}  // namespace

RadarFrame simulate_radar_frame(const World& world, const VehicleState& vehicle,
                                const RadarSensorConfig& sensor, const RadarModelConfig& cfg,
                                double timestamp, Rng& rng) {
  const Pose2D sensor_pose = compose(vehicle.pose, sensor.mount);
  const Vec2 origin = sensor_pose.translation();

  // Vehicle velocity in the sensor frame (mounts are rigid, so the static
  // Doppler formula sees the same vector the preprocessor reconstructs).
  const double cm = std::cos(sensor.mount.psi);
  const double sm = std::sin(sensor.mount.psi);
  const Vec2 v_sensor{cm * vehicle.v.x() + sm * vehicle.v.y(),
                      -sm * vehicle.v.x() + cm * vehicle.v.y()};
  const double cw = std::cos(vehicle.pose.psi);
  const double sw = std::sin(vehicle.pose.psi);
  const Vec2 v_world{cw * vehicle.v.x() - sw * vehicle.v.y(),
                     sw * vehicle.v.x() + cw * vehicle.v.y()};

  auto static_doppler = [&](const Vec2& q_sensor) {
    const double n = q_sensor.norm();
    if (n < 1e-12) return 0.0;
    return quantize((-q_sensor / n).dot(v_sensor), cfg.velocity_resolution);
  };

  std::map<BinKey, Candidate> bins;

  // Sample visible surfaces across the field of view.
  const int n_rays = std::max(1, static_cast<int>(std::round(sensor.fov / cfg.fine_ray_step)));
  for (int k = 0; k < n_rays; ++k) {
    const double az_local = -0.5 * sensor.fov + k * cfg.fine_ray_step;
    const double az_world = sensor_pose.psi + az_local;
    const Vec2 dir{std::cos(az_world), std::sin(az_world)};
    const auto hit = ray_cast(world, origin, dir, cfg.max_range);
    if (!hit) continue;

    const int az_bin = static_cast<int>(std::round(az_local / cfg.azimuth_resolution));
    const double range_meas = hit->range + rng.normal(0.0, cfg.range_sigma);
    const int range_bin = static_cast<int>(std::round(range_meas / cfg.range_resolution));
    if (range_bin <= 0) continue;
    const BinKey key{az_bin, range_bin};
    if (bins.count(key)) continue;

    Candidate cand;
    const double az_meas = az_local + rng.normal(0.0, cfg.azimuth_sigma);
    const double range_q = range_bin * cfg.range_resolution;
    cand.position_sensor = {range_q * std::cos(az_meas), range_q * std::sin(az_meas)};
    const double az_world_q = sensor_pose.psi + az_meas;
    const Vec2 dir_q{std::cos(az_world_q), std::sin(az_world_q)};
    cand.position_world = origin + range_q * dir_q;
    cand.dynamic = hit->dynamic;
    if (hit->dynamic) {
      cand.dv = quantize(dir_q.dot(hit->velocity - v_world), cfg.velocity_resolution);
    } else {
      cand.dv = static_doppler(cand.position_sensor);
    }
    bins.emplace(key, cand);
  }

  // Single-bounce multipath ghosts. The wave bounces off a visible wall
  // point w toward a second surface point p and back, so the ghost appears
  // at the bearing of w with range |s-w| + |w-p|: always behind the
  // reflector along that ray. A static bounce path keeps a
  // static-consistent Doppler, so the velocity filter cannot remove these.
  if (cfg.ghost_rate > 0.0 && !bins.empty()) {
    std::vector<Candidate> statics;
    statics.reserve(bins.size());
    for (const auto& [key, cand] : bins) {
      if (!cand.dynamic) statics.push_back(cand);
    }
    if (statics.size() >= 2) {
      const double expected = cfg.ghost_rate * static_cast<double>(bins.size());
      int attempts = static_cast<int>(expected);
      if (rng.bernoulli(expected - attempts)) ++attempts;

      for (int a = 0; a < attempts; ++a) {
        const Candidate& bounce = statics[rng.uniform_index(statics.size())];
        const Candidate& target = statics[rng.uniform_index(statics.size())];

        const double offset = (target.position_world - bounce.position_world).norm();
        if (offset < cfg.ghost_min_offset) continue;
        const double bounce_range = bounce.position_sensor.norm();
        // The bounce point wanders on the reflector as the pose changes, so
        // the path length jitters more than a direct return.
        const double path = bounce_range + offset + rng.normal(0.0, 2.0 * cfg.range_sigma);
        if (path > cfg.max_range || path <= bounce_range) continue;

        // Same beam as the reflector, farther range bin.
        const double az_local = std::atan2(bounce.position_sensor.y(), bounce.position_sensor.x());
        const int az_bin = static_cast<int>(std::round(az_local / cfg.azimuth_resolution));
        const int range_bin = static_cast<int>(std::round(path / cfg.range_resolution));
        if (range_bin <= 0) continue;
        const BinKey key{az_bin, range_bin};
        if (bins.count(key)) continue;

        Candidate cand;
        const double range_q = range_bin * cfg.range_resolution;
        cand.position_sensor = {range_q * std::cos(az_local), range_q * std::sin(az_local)};
        const double az_world_q = sensor_pose.psi + az_local;
        cand.position_world = origin + range_q * Vec2{std::cos(az_world_q), std::sin(az_world_q)};
        cand.dv = static_doppler(cand.position_sensor);
        bins.emplace(key, cand);
      }
    }
  }

  RadarFrame frame;
  frame.timestamp = timestamp;
  frame.sensor_id = sensor.id;
  for (const auto& [key, cand] : bins) {
    if (rng.bernoulli(cfg.dropout_prob)) continue;
    frame.detections.push_back(
        {cand.position_sensor.x(), cand.position_sensor.y(), 0.0, cand.dv});
  }
  return frame;
}

}  // namespace radpc
