#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace radpc {

struct SimCommandOptions {
  std::string world;  // preset name or world-file path
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  double ghost_rate = -1.0;    // < 0 keeps the preset/default value
  double dropout = -1.0;       // < 0 keeps the preset/default value
  double map_spacing = 0.02;   // m
};
int cmd_sim(const SimCommandOptions& opts);

struct TrainCommandOptions {
  std::filesystem::path dataset;
  std::filesystem::path val_dataset;  // optional; tail split of train when empty
  double val_fraction = 0.2;
  std::filesystem::path config;  // optional pipeline config
  std::filesystem::path out_dir;
  std::filesystem::path resume;  // optional checkpoint to continue from
  int epochs = 40;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  bool augment = true;
};
int cmd_train(const TrainCommandOptions& opts);

struct EvalCommandOptions {
  std::vector<std::filesystem::path> datasets;  // first labeled seen, second unseen
  std::vector<std::string> labels;              // optional row labels
  std::filesystem::path checkpoint;
  std::filesystem::path config;
  std::vector<std::filesystem::path> maps;  // optional, aligned with datasets
  std::filesystem::path out_dir;
};
int cmd_eval(const EvalCommandOptions& opts);

struct PipelineCommandOptions {
  std::filesystem::path dataset;
  std::filesystem::path checkpoint;
  std::filesystem::path config;
  std::filesystem::path out_dir;
};
int cmd_pipeline(const PipelineCommandOptions& opts);

}  // namespace radpc
