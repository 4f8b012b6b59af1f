#pragma once

#include <string>
#include <vector>

#include "radpc/gnn/graph.hpp"

namespace radpc {

/// Per-node binary labels: 1 when the node sits within tol (inclusive) of
/// any reference lidar point. An empty lidar cloud labels everything 0.
/// tol must be positive.
std::vector<int> label_nodes(const std::vector<GridNode>& nodes,
                             const std::vector<Vec2>& lidar_points, double tol);

/// One training example: a radius graph with ground-truth validity labels.
struct LabeledSample {
  RadarGraph graph;
  std::vector<int> labels;  // |labels| == graph.num_nodes(), 1 = valid
  long frame_id = 0;
  int environment = 0;
};

LabeledSample make_labeled_sample(const std::vector<GridNode>& nodes,
                                  const std::vector<Vec2>& lidar_points, double tol,
                                  double graph_radius, long frame_id, int environment);

}  // namespace radpc
