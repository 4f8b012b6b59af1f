#include "radpc/pipeline/dataset_runner.hpp"

#include <stdexcept>

#include "radpc/core/point_grid.hpp"

namespace radpc {

namespace {

SensorExtrinsics extrinsics_from_config(const SimConfig& cfg) {
  SensorExtrinsics ext;
  for (const RadarSensorConfig& s : cfg.sensors) {
    ext.set(s.id, s.mount);
  }
  return ext;
}

}  // namespace

std::vector<DatasetFrameResult> run_pipeline_over_dataset(const SimDataset& dataset,
                                                          const PipelineConfig& cfg,
                                                          const ModelParams& params,
                                                          Pipeline::Classifier mode) {
  Pipeline pipeline(cfg, extrinsics_from_config(dataset.config), params, mode);
  std::vector<DatasetFrameResult> results;
  results.reserve(dataset.frames.size());

  double prev_t = 0.0;
  bool first = true;
  long frame_id = 0;
  for (const SimFrameRecord& record : dataset.frames) {
    Pipeline::FrameOutput out = pipeline.process(record.radar, record.odometry, frame_id++);

    DatasetFrameResult result;
    result.t = record.t;
    result.dt = first ? 0.0 : record.t - prev_t;
    result.odometry = record.odometry;
    result.gt_pose = record.gt_pose;
    result.lidar = record.lidar;
    result.enhanced_cloud = std::move(out.enhanced_cloud);
    result.naive_cloud = std::move(out.naive_cloud);
    result.node_count = static_cast<int>(out.nodes.size());
    result.latency = out.latency;
    results.push_back(std::move(result));

    prev_t = record.t;
    first = false;
  }
  return results;
}

std::vector<LabeledSample> build_labeled_samples(const SimDataset& dataset,
                                                 const PipelineConfig& cfg,
                                                 const SampleBuildOptions& opts) {
  Pipeline pipeline(cfg, extrinsics_from_config(dataset.config), ModelParams{},
                    Pipeline::Classifier::kAllValid);
  std::vector<LabeledSample> samples;

  long frame_id = 0;
  for (const SimFrameRecord& record : dataset.frames) {
    Pipeline::FrameOutput out = pipeline.process(record.radar, record.odometry, frame_id);
    const long id = frame_id++;
    if (opts.skip_warmup && id < pipeline.warmup_frames()) continue;
    if (record.lidar.empty()) continue;
    if (static_cast<int>(out.nodes.size()) < opts.min_nodes) continue;
    samples.push_back(make_labeled_sample(out.nodes, record.lidar, cfg.label_tolerance,
                                          cfg.graph_radius, id, opts.environment));
  }
  return samples;
}

double naive_false_fraction(const SimDataset& dataset, const PipelineConfig& cfg, double tol) {
  const SensorExtrinsics ext = extrinsics_from_config(dataset.config);
  long total = 0;
  long false_count = 0;
  for (const SimFrameRecord& record : dataset.frames) {
    if (record.lidar.empty()) continue;
    const std::vector<RadarDetection> fused =
        filter_min_range(fuse_frames(record.radar, ext), cfg.min_range);
    if (fused.empty()) continue;
    const PointGrid2D index = PointGrid2D::with_auto_cell(record.lidar);
    for (const RadarDetection& d : fused) {
      ++total;
      if (!index.nearest_within(d.position(), tol)) ++false_count;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(false_count) / static_cast<double>(total);
}

LocalizationEval evaluate_localization(const std::vector<DatasetFrameResult>& frames,
                                       const ReferenceMap& map, const LocalizationConfig& cfg,
                                       bool use_enhanced, std::size_t start_frame) {
  if (start_frame >= frames.size()) {
    throw std::invalid_argument("localization start frame is past the dataset end");
  }

  EkfState init;
  init.mean << frames[start_frame].gt_pose.x, frames[start_frame].gt_pose.y,
      frames[start_frame].gt_pose.psi;
  init.covariance = Eigen::Matrix3d::Identity() * 1e-4;

  Localizer localizer(map, cfg, init);
  LocalizationEval eval;
  eval.pair.estimate.push_back(frames[start_frame].gt_pose);
  eval.pair.truth.push_back(frames[start_frame].gt_pose);

  for (std::size_t i = start_frame + 1; i < frames.size(); ++i) {
    const DatasetFrameResult& frame = frames[i];
    if (frame.dt > 0.0) localizer.predict(frame.odometry, frame.dt);
    const std::vector<Vec2>& cloud = use_enhanced ? frame.enhanced_cloud : frame.naive_cloud;
    if (!cloud.empty()) localizer.update_with_cloud(cloud);
    eval.pair.estimate.push_back(localizer.pose());
    eval.pair.truth.push_back(frame.gt_pose);
  }

  const std::vector<FrameError> ate_errors = ate(eval.pair);
  const std::vector<FrameError> rte_errors = rte(eval.pair);
  std::vector<double> ate_tr, ate_hd, rte_tr, rte_hd;
  for (const FrameError& e : ate_errors) {
    ate_tr.push_back(e.translation);
    ate_hd.push_back(e.heading);
  }
  for (const FrameError& e : rte_errors) {
    rte_tr.push_back(e.translation);
    rte_hd.push_back(e.heading);
  }
  eval.ate_translation = summarize(ate_tr);
  eval.ate_heading = summarize(ate_hd);
  eval.rte_translation = summarize(rte_tr);
  eval.rte_heading = summarize(rte_hd);
  return eval;
}

}  // namespace radpc
