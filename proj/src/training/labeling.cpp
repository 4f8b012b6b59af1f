#include "radpc/training/labeling.hpp"

#include <stdexcept>

#include "radpc/core/point_grid.hpp"

namespace radpc {

std::vector<int> label_nodes(const std::vector<GridNode>& nodes,
                             const std::vector<Vec2>& lidar_points, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("label tolerance must be positive");
  std::vector<int> labels(nodes.size(), 0);
  if (lidar_points.empty()) return labels;

  const PointGrid2D index = PointGrid2D::with_auto_cell(lidar_points);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (index.nearest_within({nodes[i].x, nodes[i].y}, tol)) labels[i] = 1;
  }
  return labels;
}

LabeledSample make_labeled_sample(const std::vector<GridNode>& nodes,
                                  const std::vector<Vec2>& lidar_points, double tol,
                                  double graph_radius, long frame_id, int environment) {
  LabeledSample sample;
  sample.graph = build_graph(nodes, graph_radius);
  sample.labels = label_nodes(nodes, lidar_points, tol);
  sample.frame_id = frame_id;
  sample.environment = environment;
  return sample;
}

}  // namespace radpc
