#pragma once

#include <filesystem>

#include "radpc/localization/localizer.hpp"
#include "radpc/metrics/point_cloud.hpp"
#include "radpc/preprocess/occupancy_grid.hpp"

namespace radpc {

/// Every pipeline tunable in one place. Defaults follow the reference sensor
/// setup; all values are validated on load and unknown config keys are
/// rejected.
struct PipelineConfig {
  double min_range = 1.5;          // m, ground-return filter
  double dynamic_threshold = 0.05; // m/s, static/dynamic split residual
  OccupancyGrid::Params grid;      // 0.20 m cells, [-5, 5] m, 20 frames
  double graph_radius = 10.0;      // m
  double label_tolerance = 0.20;   // m, ground-truth validity rule
  int history_length = 10;         // frames
  double decision_threshold = 0.5; // classifier cut
  DistanceForm metric_distance = DistanceForm::kEuclidean;
  LocalizationConfig localization;
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);
void save_pipeline_config(const PipelineConfig& cfg, const std::filesystem::path& path);

/// Range checks shared by the loader and programmatic construction.
void validate_pipeline_config(const PipelineConfig& cfg);

}  // namespace radpc
