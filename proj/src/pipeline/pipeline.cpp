#include "radpc/pipeline/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace radpc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Pipeline::Pipeline(const PipelineConfig& cfg, SensorExtrinsics extrinsics, ModelParams params,
                   Classifier mode)
    : cfg_(cfg),
      extrinsics_(std::move(extrinsics)),
      params_(std::move(params)),
      mode_(mode),
      grid_(cfg.grid),
      history_(cfg.history_length) {
  validate_pipeline_config(cfg_);
  if (mode_ == Classifier::kModel && params_.layers.empty()) {
    throw ConfigError("pipeline needs model parameters unless the classifier is bypassed");
  }
}

Pipeline::FrameOutput Pipeline::process(const std::vector<RadarFrame>& frames,
                                        const VehicleState& vehicle, long frame_id) {
  if (has_last_frame_id_ && frame_id <= last_frame_id_) {
    throw std::invalid_argument("pipeline frame ids must increase strictly");
  }
  for (const RadarFrame& frame : frames) {
    auto it = last_timestamp_.find(frame.sensor_id);
    if (it != last_timestamp_.end() && frame.timestamp <= it->second) {
      throw std::invalid_argument("radar timestamps must increase strictly per sensor");
    }
  }

  FrameOutput out;
  out.frame_id = frame_id;
  out.timestamp = frames.empty() ? 0.0 : frames.front().timestamp;

  // Preprocess: fuse, ground filter, static/dynamic split, grid update.
  const auto t0 = Clock::now();
  std::vector<Vec2> origins;
  std::vector<RadarDetection> fused = fuse_frames(frames, extrinsics_, &origins);
  std::vector<RadarDetection> kept;
  std::vector<Vec2> kept_origins;
  kept.reserve(fused.size());
  kept_origins.reserve(fused.size());
  for (std::size_t i = 0; i < fused.size(); ++i) {
    if (fused[i].range() >= cfg_.min_range) {
      kept.push_back(fused[i]);
      kept_origins.push_back(origins[i]);
    }
  }
  SplitResult split = split_dynamic_static(kept, vehicle, cfg_.dynamic_threshold, kept_origins);
  out.fused.timestamp = out.timestamp;
  out.fused.vehicle = vehicle;
  out.fused.static_detections = std::move(split.static_detections);
  out.fused.dynamic_detections = std::move(split.dynamic_detections);

  out.naive_cloud.reserve(kept.size());
  for (const RadarDetection& d : kept) {
    out.naive_cloud.push_back(d.position());
  }

  grid_.update(out.fused.static_detections, vehicle.pose);
  out.nodes = grid_.extract_nodes();
  out.latency.preprocess_s = seconds_since(t0);

  // Radius graph.
  const auto t1 = Clock::now();
  out.graph = build_graph(out.nodes, cfg_.graph_radius);
  out.latency.graph_s = seconds_since(t1);

  // Classifier.
  const auto t2 = Clock::now();
  if (mode_ == Classifier::kAllValid || out.graph.num_nodes() == 0) {
    out.probabilities = Eigen::VectorXd::Ones(out.graph.num_nodes());
  } else {
    out.probabilities = model_forward(params_, out.graph);
  }
  out.latency.forward_s = seconds_since(t2);

  // History densification.
  const auto t3 = Clock::now();
  out.valid_points.reserve(out.nodes.size());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    if (out.probabilities(static_cast<Eigen::Index>(i)) >= cfg_.decision_threshold) {
      out.valid_points.emplace_back(out.nodes[i].x, out.nodes[i].y);
    }
  }
  history_.push(out.valid_points, vehicle.pose, frame_id);
  out.enhanced_cloud = history_.cloud(vehicle.pose);
  out.latency.history_s = seconds_since(t3);

  for (const RadarFrame& frame : frames) {
    last_timestamp_[frame.sensor_id] = frame.timestamp;
  }
  has_last_frame_id_ = true;
  last_frame_id_ = frame_id;
  return out;
}

void Pipeline::reset() {
  grid_.reset();
  history_.reset();
  last_timestamp_.clear();
  has_last_frame_id_ = false;
  last_frame_id_ = 0;
}

}  // namespace radpc
