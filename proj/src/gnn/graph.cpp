#include "radpc/gnn/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace radpc {

Eigen::MatrixXd node_feature_matrix(const std::vector<GridNode>& nodes) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(nodes.size()), 4);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = nodes[i].x;
    m(static_cast<Eigen::Index>(i), 1) = nodes[i].y;
    m(static_cast<Eigen::Index>(i), 2) = nodes[i].z;
    m(static_cast<Eigen::Index>(i), 3) = nodes[i].p_det;
  }
  return m;
}

RadarGraph build_graph(const Eigen::MatrixXd& node_features, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("graph radius must be positive");
  if (node_features.size() > 0 && node_features.cols() != 4) {
    throw std::invalid_argument("node features must be N x 4");
  }

  RadarGraph graph;
  graph.nodes = node_features;
  const int n = graph.num_nodes();
  graph.neighbors.assign(n, {});

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = node_features(i, 0) - node_features(j, 0);
      const double dy = node_features(i, 1) - node_features(j, 1);
      const double dz = node_features(i, 2) - node_features(j, 2);
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (dist <= radius) {
        graph.edges.push_back({i, j, dist});
        graph.neighbors[i].push_back(j);
        graph.neighbors[j].push_back(i);
      }
    }
  }
  return graph;
}

RadarGraph build_graph(const std::vector<GridNode>& nodes, double radius) {
  return build_graph(node_feature_matrix(nodes), radius);
}

}  // namespace radpc
