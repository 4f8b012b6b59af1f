#include "radpc/training/trainer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace radpc {

namespace {

struct AdamState {
  ModelParams m;
  ModelParams v;
};

AdamState make_adam_state(const ModelParams& params) {
  AdamState state;
  for (const SageLayer& layer : params.layers) {
    state.m.layers.push_back(SageLayer::zeros(layer.in_dim(), layer.out_dim()));
    state.v.layers.push_back(SageLayer::zeros(layer.in_dim(), layer.out_dim()));
  }
  return state;
}

void apply_update(ModelParams& params, const ModelParams& grads, AdamState& adam,
                  const TrainConfig& cfg, long step) {
  auto update = [&](Eigen::Ref<Eigen::MatrixXd> p, const Eigen::MatrixXd& g,
                    Eigen::Ref<Eigen::MatrixXd> m, Eigen::Ref<Eigen::MatrixXd> v) {
    if (!cfg.adam) {
      p -= cfg.learning_rate * g;
      return;
    }
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
    const Eigen::MatrixXd m_hat = m / bc1;
    const Eigen::MatrixXd v_hat = v / bc2;
    p -= cfg.learning_rate * (m_hat.array() / (v_hat.array().sqrt() + cfg.adam_eps)).matrix();
  };

  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    update(params.layers[k].w_self, grads.layers[k].w_self, adam.m.layers[k].w_self,
           adam.v.layers[k].w_self);
    update(params.layers[k].w_neigh, grads.layers[k].w_neigh, adam.m.layers[k].w_neigh,
           adam.v.layers[k].w_neigh);
    update(params.layers[k].bias, grads.layers[k].bias, adam.m.layers[k].bias,
           adam.v.layers[k].bias);
  }
}

void fisher_yates(std::vector<std::size_t>& order, Rng& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
}

}  // namespace

ModelParams init_params(Rng& rng) {
  const auto dims = ModelParams::kDefaultDims;
  return init_params(rng, std::span<const std::pair<int, int>>(dims.data(), dims.size()));
}

ModelParams init_params(Rng& rng, std::span<const std::pair<int, int>> dims) {
  ModelParams params;
  for (const auto& [in, out] : dims) {
    SageLayer layer = SageLayer::zeros(in, out);
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    for (Eigen::Index r = 0; r < layer.w_self.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.w_self.cols(); ++c) {
        layer.w_self(r, c) = rng.uniform(-bound, bound);
      }
    }
    for (Eigen::Index r = 0; r < layer.w_neigh.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.w_neigh.cols(); ++c) {
        layer.w_neigh(r, c) = rng.uniform(-bound, bound);
      }
    }
    // Bias starts at zero.
    params.layers.push_back(std::move(layer));
  }
  return params;
}

EvalStats evaluate(const ModelParams& params, const std::vector<LabeledSample>& samples,
                   const BceOptions& loss_opts, double decision_threshold) {
  EvalStats stats;
  if (samples.empty()) return stats;
  double loss_sum = 0.0;
  long correct = 0;
  long total = 0;
  int counted = 0;
  for (const LabeledSample& sample : samples) {
    if (sample.graph.num_nodes() == 0) continue;
    const Eigen::VectorXd probs = model_forward(params, sample.graph);
    loss_sum += bce_loss(probs, sample.labels, loss_opts);
    ++counted;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      const int predicted = probs(i) >= decision_threshold ? 1 : 0;
      if (predicted == sample.labels[static_cast<std::size_t>(i)]) ++correct;
      ++total;
    }
  }
  if (counted > 0) stats.loss = loss_sum / counted;
  if (total > 0) stats.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return stats;
}

TrainResult train(const std::vector<LabeledSample>& train_set,
                  const std::vector<LabeledSample>& val_set, const TrainConfig& config,
                  ModelParams initial) {
  if (train_set.empty()) throw std::invalid_argument("training set is empty");
  if (config.learning_rate <= 0.0) throw std::invalid_argument("learning rate must be positive");

  TrainResult result;
  result.params = std::move(initial);

  Rng rng(config.seed);
  AdamState adam = make_adam_state(result.params);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) fisher_yates(order, rng);
    for (std::size_t idx : order) {
      const LabeledSample& base = train_set[idx];
      if (base.graph.num_nodes() == 0) continue;
      const LabeledSample sample =
          config.augment ? augment_sample(base, config.augmentation, rng) : base;
      const BackwardResult back = backward(result.params, sample.graph, sample.labels, config.loss);
      ++step;
      apply_update(result.params, back.gradients, adam, config, step);
    }

    EpochStats stats;
    stats.epoch = config.start_epoch + epoch;
    const EvalStats train_eval = evaluate(result.params, train_set, config.loss, config.decision_threshold);
    const EvalStats val_eval = evaluate(result.params, val_set, config.loss, config.decision_threshold);
    stats.train_loss = train_eval.loss;
    stats.train_accuracy = train_eval.accuracy;
    stats.val_loss = val_eval.loss;
    stats.val_accuracy = val_eval.accuracy;
    result.history.push_back(stats);
  }
  return result;
}

TrainResult train(const std::vector<LabeledSample>& train_set,
                  const std::vector<LabeledSample>& val_set, const TrainConfig& config) {
  Rng init_rng(config.seed);
  ModelParams initial = init_params(init_rng);
  return train(train_set, val_set, config, std::move(initial));
}

}  // namespace radpc
