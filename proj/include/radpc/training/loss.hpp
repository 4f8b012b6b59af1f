#pragma once

#include <vector>

#include <Eigen/Core>

#include "radpc/gnn/model.hpp"
#include "radpc/training/labeling.hpp"

namespace radpc {

struct BceOptions {
  double clamp_eps = 1e-7;  // probabilities clamped to [eps, 1 - eps]
  double pos_weight = 1.0;  // weight on the valid class
};

/// Mean binary cross entropy over nodes, with clamped probabilities.
double bce_loss(const Eigen::VectorXd& probs, const std::vector<int>& labels,
                const BceOptions& opts = {});

struct BackwardResult {
  double loss = 0.0;
  Eigen::VectorXd probs;
  ModelParams gradients;  // same shapes as the parameters
};

/// Exact gradient of bce_loss(model_forward(params, graph), labels) with
/// respect to every parameter. Nodes whose probability saturates the clamp
/// contribute zero gradient, matching the clamped loss exactly.
BackwardResult backward(const ModelParams& params, const RadarGraph& graph,
                        const std::vector<int>& labels, const BceOptions& opts = {});

}  // namespace radpc
