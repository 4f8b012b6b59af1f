#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "radpc/gnn/graph.hpp"

namespace radpc {

/// One GraphSAGE block: out = act(W_self h + bias + W_neigh mean_N(h)).
/// The bias sits on the self path only.
struct SageLayer {
  Eigen::MatrixXd w_self;   // out x in
  Eigen::MatrixXd w_neigh;  // out x in
  Eigen::VectorXd bias;     // out

  int in_dim() const { return static_cast<int>(w_self.cols()); }
  int out_dim() const { return static_cast<int>(w_self.rows()); }

  static SageLayer zeros(int in, int out);
};

/// The node classifier: three blocks 4 -> 16 -> 16 -> 1 with ReLU between
/// blocks and a sigmoid on the scalar output; 705 scalars total.
struct ModelParams {
  std::vector<SageLayer> layers;

  static constexpr std::array<std::pair<int, int>, 3> kDefaultDims{{{4, 16}, {16, 16}, {16, 1}}};

  static ModelParams zeros();
};

/// Total scalar count: sum over layers of out * (2 * in + 1).
long count_params(const ModelParams& params);

/// Per-node mean of neighbor features; the zero vector for isolated nodes.
Eigen::MatrixXd neighbor_mean(const RadarGraph& graph, const Eigen::MatrixXd& features);

/// One block forward pass. Throws std::invalid_argument when the feature
/// width does not match the layer.
Eigen::MatrixXd sage_layer_forward(const SageLayer& layer, const Eigen::MatrixXd& features,
                                   const RadarGraph& graph, bool apply_relu);

/// Per-node probability of being a valid detection, strictly inside (0, 1).
/// A node classifies as valid when the probability reaches the decision
/// threshold (0.5 by default).
Eigen::VectorXd model_forward(const ModelParams& params, const RadarGraph& graph);

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Checkpoint container: versioned JSON with layer dims and row-major weight
/// arrays. load(save(p)) reproduces p bit-exactly.
void save_params(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_params(const std::filesystem::path& path);

}  // namespace radpc
