#pragma once

#include <cstdint>
#include <span>

#include "radpc/training/augment.hpp"
#include "radpc/training/loss.hpp"

namespace radpc {

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 50;
  std::uint64_t seed = 0;
  bool adam = true;  // plain gradient descent when false
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  bool shuffle = true;
  bool augment = true;
  AugmentConfig augmentation;
  BceOptions loss;
  double decision_threshold = 0.5;
  int start_epoch = 0;  // epoch numbering offset for resumed runs
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

/// Fan-based uniform init, +-sqrt(6 / (in + out)) per layer, from the given
/// stream. Default architecture unless dims are supplied.
ModelParams init_params(Rng& rng);
ModelParams init_params(Rng& rng, std::span<const std::pair<int, int>> dims);

struct EvalStats {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Mean loss and node-level accuracy over a sample set (samples weighted
/// equally; accuracy over all nodes pooled).
EvalStats evaluate(const ModelParams& params, const std::vector<LabeledSample>& samples,
                   const BceOptions& loss_opts, double decision_threshold);

/// One-graph-per-step gradient descent, deterministic under a fixed seed.
/// Zero epochs returns the initial parameters unchanged.
TrainResult train(const std::vector<LabeledSample>& train_set,
                  const std::vector<LabeledSample>& val_set, const TrainConfig& config,
                  ModelParams initial);

/// Same, with parameters initialized from the config seed.
TrainResult train(const std::vector<LabeledSample>& train_set,
                  const std::vector<LabeledSample>& val_set, const TrainConfig& config);

}  // namespace radpc
