#pragma once

#include <string>
#include <vector>

#include "radpc/sim/simulator.hpp"

namespace radpc {

/// A ready-to-run scenario: world geometry, drive path and sensor settings.
struct ScenarioPreset {
  std::string name;
  World world;
  std::vector<Vec2> waypoints;
  SimConfig config;
};

std::vector<std::string> preset_names();

/// Built-in scenarios. "env-a" / "env-b" are two room layouts with moderate
/// multipath; "ghost60-a" / "ghost60-b" are the same rooms with the ghost
/// rate raised until roughly 60% of raw detections are false; "env-small"
/// is a short deterministic smoke scenario. Throws ConfigError for unknown
/// names.
ScenarioPreset make_preset(const std::string& name, std::uint64_t seed);

}  // namespace radpc
