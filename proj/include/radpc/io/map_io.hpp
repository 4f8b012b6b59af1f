#pragma once

#include <filesystem>

#include "radpc/localization/icp.hpp"
#include "radpc/sim/world.hpp"

namespace radpc {

/// Reference map from the world's static segments, sampled at `spacing`.
/// Actors are excluded: the map captures the static environment only.
ReferenceMap sample_world_map(const World& world, double spacing = 0.02);

/// Plain point list, one "x y" line per point, plus a JSON metadata sidecar.
void write_map(const ReferenceMap& map, const std::filesystem::path& points_path,
               const std::filesystem::path& meta_path);

/// Loads the point list; the sidecar, when present, supplies the resolution.
ReferenceMap read_map(const std::filesystem::path& points_path,
                      const std::filesystem::path& meta_path = {});

}  // namespace radpc
