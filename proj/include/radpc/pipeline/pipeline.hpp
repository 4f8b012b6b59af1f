#pragma once

#include <map>
#include <vector>

#include "radpc/gnn/model.hpp"
#include "radpc/history/detection_history.hpp"
#include "radpc/pipeline/config.hpp"
#include "radpc/preprocess/preprocess.hpp"

namespace radpc {

struct StageLatency {
  double preprocess_s = 0.0;  // fuse + filter + split + grid
  double graph_s = 0.0;       // radius graph construction
  double forward_s = 0.0;     // classifier inference
  double history_s = 0.0;     // push + densified cloud
  double total() const { return preprocess_s + graph_s + forward_s + history_s; }
};

/// The per-frame enhancement chain: fuse, min-range filter, static/dynamic
/// split, occupancy grid, radius graph, classifier, detection history.
/// Stateful across frames (grid window and history buffer); single writer.
class Pipeline {
 public:
  enum class Classifier {
    kModel,     // run the trained network
    kAllValid,  // bypass: every node classified valid
  };

  Pipeline(const PipelineConfig& cfg, SensorExtrinsics extrinsics, ModelParams params,
           Classifier mode = Classifier::kModel);

  struct FrameOutput {
    long frame_id = 0;
    double timestamp = 0.0;
    FusedFrame fused;
    std::vector<GridNode> nodes;
    RadarGraph graph;
    Eigen::VectorXd probabilities;     // per node
    std::vector<Vec2> valid_points;    // vehicle frame, this frame's valid nodes
    std::vector<Vec2> enhanced_cloud;  // vehicle frame, history-densified
    std::vector<Vec2> naive_cloud;     // fused post-filter detections, no enhancement
    StageLatency latency;
  };

  /// Processes one time step. frame_id must increase strictly; per-sensor
  /// timestamps must increase strictly as well.
  FrameOutput process(const std::vector<RadarFrame>& frames, const VehicleState& vehicle,
                      long frame_id);

  /// Frames needed before the grid window is fully populated.
  int warmup_frames() const { return cfg_.grid.window; }

  const PipelineConfig& config() const { return cfg_; }

  void reset();

 private:
  PipelineConfig cfg_;
  SensorExtrinsics extrinsics_;
  ModelParams params_;
  Classifier mode_;
  OccupancyGrid grid_;
  DetectionHistory history_;
  std::map<std::string, double> last_timestamp_;
  bool has_last_frame_id_ = false;
  long last_frame_id_ = 0;
};

}  // namespace radpc
