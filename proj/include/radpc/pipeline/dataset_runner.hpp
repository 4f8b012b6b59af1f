#pragma once

#include <vector>

#include "radpc/io/map_io.hpp"
#include "radpc/localization/localizer.hpp"
#include "radpc/metrics/trajectory.hpp"
#include "radpc/pipeline/pipeline.hpp"
#include "radpc/sim/simulator.hpp"
#include "radpc/training/labeling.hpp"

namespace radpc {

/// Per-frame pipeline products aligned with the dataset records.
struct DatasetFrameResult {
  double t = 0.0;
  double dt = 0.0;  // s since the previous record
  VehicleState odometry;
  Pose2D gt_pose;
  std::vector<Vec2> lidar;  // empty on frames without a scan
  std::vector<Vec2> enhanced_cloud;
  std::vector<Vec2> naive_cloud;
  int node_count = 0;
  StageLatency latency;
};

/// Replays every record through a fresh Pipeline, driven by the recorded
/// odometry (the ground truth never feeds the pipeline).
std::vector<DatasetFrameResult> run_pipeline_over_dataset(const SimDataset& dataset,
                                                          const PipelineConfig& cfg,
                                                          const ModelParams& params,
                                                          Pipeline::Classifier mode);

struct SampleBuildOptions {
  int environment = 0;
  int min_nodes = 4;        // frames with fewer graph nodes are skipped
  bool skip_warmup = true;  // drop frames until the grid window has filled
};

/// Training samples from a dataset: preprocessing (classifier bypassed)
/// plus ground-truth labels from each frame's lidar scan.
std::vector<LabeledSample> build_labeled_samples(const SimDataset& dataset,
                                                 const PipelineConfig& cfg,
                                                 const SampleBuildOptions& opts = {});

/// Fraction of raw fused detections (after the min-range filter) farther
/// than tol from the frame's lidar scan. Frames without lidar are skipped.
double naive_false_fraction(const SimDataset& dataset, const PipelineConfig& cfg, double tol);

struct LocalizationEval {
  TrajectoryPair pair;
  MetricSummary ate_translation;
  MetricSummary ate_heading;
  MetricSummary rte_translation;
  MetricSummary rte_heading;
};

/// Runs the pose filter over already-computed frame results, starting at
/// start_frame with the ground-truth pose as the prior, and scores the
/// estimates against ground truth.
LocalizationEval evaluate_localization(const std::vector<DatasetFrameResult>& frames,
                                       const ReferenceMap& map, const LocalizationConfig& cfg,
                                       bool use_enhanced, std::size_t start_frame);

}  // namespace radpc
