#include "radpc/training/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radpc {

namespace {

/// Transpose of the row-normalized adjacency applied to x:
/// out[j] += x[i] / deg(i) for every edge (i, j).
Eigen::MatrixXd scatter_mean_transpose(const RadarGraph& graph, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for (int i = 0; i < graph.num_nodes(); ++i) {
    const auto& nbrs = graph.neighbors[i];
    if (nbrs.empty()) continue;
    const double inv = 1.0 / static_cast<double>(nbrs.size());
    for (int j : nbrs) {
      out.row(j) += x.row(i) * inv;
    }
  }
  return out;
}

}  // namespace

double bce_loss(const Eigen::VectorXd& probs, const std::vector<int>& labels,
                const BceOptions& opts) {
  if (probs.size() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument("probs and labels must be the same length");
  }
  if (probs.size() == 0) throw std::invalid_argument("bce_loss over zero nodes is undefined");

  const double eps = opts.clamp_eps;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs(i), eps, 1.0 - eps);
    if (labels[static_cast<std::size_t>(i)] == 1) {
      sum += -opts.pos_weight * std::log(p);
    } else {
      sum += -std::log(1.0 - p);
    }
  }
  return sum / static_cast<double>(probs.size());
}

BackwardResult backward(const ModelParams& params, const RadarGraph& graph,
                        const std::vector<int>& labels, const BceOptions& opts) {
  const int num_layers = static_cast<int>(params.layers.size());
  if (num_layers == 0) throw std::invalid_argument("model has no layers");
  const Eigen::Index n = graph.nodes.rows();
  if (n == 0) throw std::invalid_argument("backward over an empty graph is undefined");
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument("labels must match node count");
  }

  // Forward pass keeping per-layer inputs, aggregates and pre-activations.
  std::vector<Eigen::MatrixXd> inputs(num_layers);      // H[k]
  std::vector<Eigen::MatrixXd> aggregates(num_layers);  // mean_N(H[k])
  std::vector<Eigen::MatrixXd> pre_act(num_layers);     // Z[k]
  Eigen::MatrixXd h = graph.nodes;
  for (int k = 0; k < num_layers; ++k) {
    const SageLayer& layer = params.layers[k];
    if (h.cols() != layer.in_dim()) {
      throw std::invalid_argument("feature width does not match layer input dim");
    }
    inputs[k] = h;
    aggregates[k] = neighbor_mean(graph, h);
    Eigen::MatrixXd z = h * layer.w_self.transpose() + aggregates[k] * layer.w_neigh.transpose();
    z.rowwise() += layer.bias.transpose();
    pre_act[k] = z;
    h = (k + 1 < num_layers) ? z.cwiseMax(0.0).eval() : z;
  }
  if (h.cols() != 1) throw std::invalid_argument("final layer must be scalar");

  BackwardResult result;
  result.probs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.probs(i) = sigmoid(h(i, 0));
  }
  result.loss = bce_loss(result.probs, labels, opts);

  // d(loss)/d(logit): (p (w y + 1 - y) - w y) / N inside the clamp, 0 when
  // the clamp saturates.
  const double eps = opts.clamp_eps;
  const double w = opts.pos_weight;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = result.probs(i);
    if (p <= eps || p >= 1.0 - eps) continue;
    const double y = static_cast<double>(labels[static_cast<std::size_t>(i)]);
    grad(i, 0) = (p * (w * y + 1.0 - y) - w * y) / static_cast<double>(n);
  }

  result.gradients.layers.resize(num_layers);
  for (int k = num_layers - 1; k >= 0; --k) {
    const SageLayer& layer = params.layers[k];
    SageLayer& g = result.gradients.layers[k];
    g.w_self = grad.transpose() * inputs[k];
    g.w_neigh = grad.transpose() * aggregates[k];
    g.bias = grad.colwise().sum().transpose();
    if (k > 0) {
      Eigen::MatrixXd down = grad * layer.w_self + scatter_mean_transpose(graph, grad * layer.w_neigh);
      grad = down.cwiseProduct((pre_act[k - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return result;
}

}  // namespace radpc
