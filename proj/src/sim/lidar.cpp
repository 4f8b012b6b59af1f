#include "radpc/sim/lidar.hpp"

#include <cmath>

namespace radpc {

std::vector<Vec2> simulate_lidar_scan(const World& world, const Pose2D& pose,
                                      const LidarConfig& cfg) {
  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(cfg.rays));
  const Vec2 origin = pose.translation();
  for (int k = 0; k < cfg.rays; ++k) {
    const double az_local = 2.0 * kPi * k / cfg.rays;
    const double az_world = pose.psi + az_local;
    const Vec2 dir{std::cos(az_world), std::sin(az_world)};
    const auto hit = ray_cast(world, origin, dir, cfg.max_range);
    if (!hit) continue;
    points.emplace_back(hit->range * std::cos(az_local), hit->range * std::sin(az_local));
  }
  return points;
}

}  // namespace radpc
