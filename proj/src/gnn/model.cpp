#include "radpc/gnn/model.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "radpc/core/types.hpp"

namespace radpc {

namespace {

constexpr const char* kCheckpointFormat = "radpc-gnn-checkpoint";
constexpr int kCheckpointVersion = 1;

std::vector<double> flatten_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(m(r, c));
    }
  }
  return out;
}

Eigen::MatrixXd unflatten_row_major(const std::vector<double>& v, int rows, int cols) {
  if (static_cast<long>(v.size()) != static_cast<long>(rows) * cols) {
    throw CheckpointError("weight array length does not match layer dims");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = v[k++];
    }
  }
  return m;
}

}  // namespace

SageLayer SageLayer::zeros(int in, int out) {
  SageLayer layer;
  layer.w_self = Eigen::MatrixXd::Zero(out, in);
  layer.w_neigh = Eigen::MatrixXd::Zero(out, in);
  layer.bias = Eigen::VectorXd::Zero(out);
  return layer;
}

ModelParams ModelParams::zeros() {
  ModelParams params;
  for (const auto& [in, out] : kDefaultDims) {
    params.layers.push_back(SageLayer::zeros(in, out));
  }
  return params;
}

long count_params(const ModelParams& params) {
  long total = 0;
  for (const SageLayer& layer : params.layers) {
    total += static_cast<long>(layer.out_dim()) * (2L * layer.in_dim() + 1L);
  }
  return total;
}

Eigen::MatrixXd neighbor_mean(const RadarGraph& graph, const Eigen::MatrixXd& features) {
  Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(features.rows(), features.cols());
  for (int i = 0; i < graph.num_nodes(); ++i) {
    const auto& nbrs = graph.neighbors[i];
    if (nbrs.empty()) continue;
    for (int j : nbrs) {
      agg.row(i) += features.row(j);
    }
    agg.row(i) /= static_cast<double>(nbrs.size());
  }
  return agg;
}

Eigen::MatrixXd sage_layer_forward(const SageLayer& layer, const Eigen::MatrixXd& features,
                                   const RadarGraph& graph, bool apply_relu) {
  if (features.cols() != layer.in_dim()) {
    throw std::invalid_argument("feature width does not match layer input dim");
  }
  if (features.rows() != graph.num_nodes()) {
    throw std::invalid_argument("feature rows do not match graph node count");
  }
  const Eigen::MatrixXd agg = neighbor_mean(graph, features);
  Eigen::MatrixXd z = features * layer.w_self.transpose() + agg * layer.w_neigh.transpose();
  z.rowwise() += layer.bias.transpose();
  if (apply_relu) z = z.cwiseMax(0.0);
  return z;
}

Eigen::VectorXd model_forward(const ModelParams& params, const RadarGraph& graph) {
  if (params.layers.empty()) throw std::invalid_argument("model has no layers");
  Eigen::MatrixXd h = graph.nodes;
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const bool relu = k + 1 < params.layers.size();
    h = sage_layer_forward(params.layers[k], h, graph, relu);
  }
  if (h.cols() != 1) throw std::invalid_argument("final layer must be scalar");
  Eigen::VectorXd probs(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    probs(i) = sigmoid(h(i, 0));
  }
  return probs;
}

void save_params(const ModelParams& params, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["layers"] = nlohmann::json::array();
  for (const SageLayer& layer : params.layers) {
    nlohmann::json lj;
    lj["in"] = layer.in_dim();
    lj["out"] = layer.out_dim();
    lj["w_self"] = flatten_row_major(layer.w_self);
    lj["w_neigh"] = flatten_row_major(layer.w_neigh);
    lj["bias"] = std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size());
    j["layers"].push_back(std::move(lj));
  }
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path.string());
  out << j.dump() << "\n";
}

ModelParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("malformed checkpoint " + path.string() + ": " + e.what());
  }

  if (!j.is_object() || j.value("format", "") != kCheckpointFormat) {
    throw CheckpointError("not a model checkpoint: " + path.string());
  }
  if (j.value("version", -1) != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version in " + path.string());
  }
  if (!j.contains("layers") || !j["layers"].is_array() || j["layers"].empty()) {
    throw CheckpointError("checkpoint has no layers: " + path.string());
  }

  ModelParams params;
  try {
    int prev_out = -1;
    for (const auto& lj : j["layers"]) {
      const int in = lj.at("in").get<int>();
      const int out = lj.at("out").get<int>();
      if (in <= 0 || out <= 0) throw CheckpointError("non-positive layer dims");
      if (prev_out >= 0 && prev_out != in) {
        throw CheckpointError("layer input dim does not chain with previous output dim");
      }
      SageLayer layer;
      layer.w_self = unflatten_row_major(lj.at("w_self").get<std::vector<double>>(), out, in);
      layer.w_neigh = unflatten_row_major(lj.at("w_neigh").get<std::vector<double>>(), out, in);
      const auto bias = lj.at("bias").get<std::vector<double>>();
      if (static_cast<int>(bias.size()) != out) {
        throw CheckpointError("bias length does not match layer dims");
      }
      layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), out);
      params.layers.push_back(std::move(layer));
      prev_out = out;
    }
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("malformed checkpoint " + path.string() + ": " + e.what());
  }

  for (const SageLayer& layer : params.layers) {
    if (!layer.w_self.allFinite() || !layer.w_neigh.allFinite() || !layer.bias.allFinite()) {
      throw CheckpointError("checkpoint contains non-finite values: " + path.string());
    }
  }
  return params;
}

}  // namespace radpc
