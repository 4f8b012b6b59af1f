#pragma once

#include <vector>

#include <Eigen/Core>

#include "radpc/preprocess/occupancy_grid.hpp"

namespace radpc {

struct GraphEdge {
  int i = 0;  // i < j, no self loops
  int j = 0;
  double distance = 0.0;  // m, Euclidean between node positions
};

/// Radius graph over occupancy-grid nodes. Node features are
/// [dx, dy, dz, p_det]; edges connect every pair within the radius and carry
/// the pair distance. Distances are kept for weighted-aggregation variants
/// even though the mean aggregator does not consume them.
struct RadarGraph {
  Eigen::MatrixXd nodes;                    // N x 4
  std::vector<GraphEdge> edges;             // undirected, stored once
  std::vector<std::vector<int>> neighbors;  // adjacency derived from edges

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
};

/// Connects all and only node pairs within `radius` (inclusive).
/// node_features must be N x 4; radius must be positive.
RadarGraph build_graph(const Eigen::MatrixXd& node_features, double radius);
RadarGraph build_graph(const std::vector<GridNode>& nodes, double radius);

/// N x 4 feature matrix from grid nodes.
Eigen::MatrixXd node_feature_matrix(const std::vector<GridNode>& nodes);

}  // namespace radpc
