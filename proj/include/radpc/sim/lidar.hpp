#pragma once

#include <vector>

#include "radpc/core/geometry.hpp"
#include "radpc/sim/world.hpp"

namespace radpc {

struct LidarConfig {
  int rays = 360;           // full 360 degrees, 1 degree steps at default
  double max_range = 20.0;  // m
};

/// First-hit scan from `pose`. Returned points are in the vehicle frame;
/// rays without a hit inside max_range contribute nothing. Actors occlude
/// like any other surface.
std::vector<Vec2> simulate_lidar_scan(const World& world, const Pose2D& pose,
                                      const LidarConfig& cfg = {});

}  // namespace radpc
