#pragma once

#include <filesystem>
#include <vector>

#include "radpc/sim/world.hpp"

namespace radpc {

/// World description plus the drive path, as stored in world files.
struct WorldFile {
  World world;
  std::vector<Vec2> waypoints;
};

/// Declarative JSON world format: extent, segments as [x1, y1, x2, y2],
/// actors, waypoints. Validation failures name the offending entry.
WorldFile read_world(const std::filesystem::path& path);
void write_world(const WorldFile& wf, const std::filesystem::path& path);

}  // namespace radpc
