#pragma once

#include <optional>
#include <span>
#include <vector>

#include "radpc/core/point_grid.hpp"

namespace radpc {

/// Pre-mapped environment as a plain 2D point set (the format the simulator
/// exports and the map files carry).
struct ReferenceMap {
  std::vector<Vec2> points;
  double resolution = 0.02;  // m, sampling spacing of the source geometry
};

struct IcpConfig {
  double max_correspondence = 1.0;   // m
  int max_iterations = 50;
  double translation_epsilon = 1e-4; // m
  double rotation_epsilon = 1e-4;    // rad
};

struct IcpResult {
  Pose2D pose;            // maps source-local points into the map frame
  double fitness = 0.0;   // matched fraction of the source at convergence
  int iterations = 0;
};

/// Point-to-point 2D ICP from `init`: nearest-neighbor correspondences
/// bounded by max_correspondence, closed-form rigid fit about the source
/// centroid, until the pose delta drops below the epsilons or the iteration
/// cap. Returns nullopt when no correspondences exist (measurement
/// unavailable) and throws std::invalid_argument for an empty source.
std::optional<IcpResult> icp_align(std::span<const Vec2> source, const PointGrid2D& target,
                                   const Pose2D& init, const IcpConfig& cfg = {});

/// Convenience overload building the target index on the fly.
std::optional<IcpResult> icp_align(std::span<const Vec2> source, const ReferenceMap& map,
                                   const Pose2D& init, const IcpConfig& cfg = {});

}  // namespace radpc
