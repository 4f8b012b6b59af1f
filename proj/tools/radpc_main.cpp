#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "radpc/cli/commands.hpp"
#include "radpc/sim/presets.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radar point-cloud enhancement pipeline"};
  app.require_subcommand(1);

  radpc::SimCommandOptions sim_opts;
  CLI::App* sim = app.add_subcommand("sim", "generate a synthetic dataset, world and map");
  sim->add_option("--world", sim_opts.world, "preset name or world JSON file");
  sim->add_option("--out", sim_opts.out_dir, "output directory");
  sim->add_option("--seed", sim_opts.seed, "random seed");
  sim->add_option("--ghost-rate", sim_opts.ghost_rate, "override multipath ghost rate");
  sim->add_option("--dropout", sim_opts.dropout, "override detection dropout probability");
  sim->add_option("--map-spacing", sim_opts.map_spacing, "map sampling spacing (m)");

  bool list_presets = false;
  sim->add_flag("--list-presets", list_presets, "list built-in scenario presets and exit");

  radpc::TrainCommandOptions train_opts;
  CLI::App* train = app.add_subcommand("train", "train the node classifier on a dataset");
  train->add_option("--dataset", train_opts.dataset, "training dataset (dataset.jsonl)")
      ->required();
  train->add_option("--val-dataset", train_opts.val_dataset, "validation dataset");
  train->add_option("--val-fraction", train_opts.val_fraction,
                    "tail fraction of train samples used for validation");
  train->add_option("--config", train_opts.config, "pipeline config JSON");
  train->add_option("--out", train_opts.out_dir, "output directory")->required();
  train->add_option("--resume", train_opts.resume, "checkpoint to continue from");
  train->add_option("--epochs", train_opts.epochs, "training epochs");
  train->add_option("--lr", train_opts.learning_rate, "learning rate");
  train->add_option("--seed", train_opts.seed, "random seed");
  bool no_augment = false;
  train->add_flag("--no-augment", no_augment, "disable data augmentation");

  radpc::EvalCommandOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "point-cloud quality and trajectory report");
  eval->add_option("--dataset", eval_opts.datasets, "dataset files (first seen, second unseen)")
      ->required();
  eval->add_option("--label", eval_opts.labels, "row labels matching the datasets");
  eval->add_option("--checkpoint", eval_opts.checkpoint, "trained model checkpoint")->required();
  eval->add_option("--config", eval_opts.config, "pipeline config JSON");
  eval->add_option("--map", eval_opts.maps,
                   "map point lists aligned with --dataset; enables trajectory metrics");
  eval->add_option("--out", eval_opts.out_dir, "output directory")->required();

  radpc::PipelineCommandOptions pipe_opts;
  CLI::App* pipe = app.add_subcommand("pipeline", "stream enhanced clouds with latency stats");
  pipe->add_option("--dataset", pipe_opts.dataset, "dataset file")->required();
  pipe->add_option("--checkpoint", pipe_opts.checkpoint, "trained model checkpoint")->required();
  pipe->add_option("--config", pipe_opts.config, "pipeline config JSON");
  pipe->add_option("--out", pipe_opts.out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      if (list_presets) {
        for (const std::string& name : radpc::preset_names()) {
          std::cout << name << "\n";
        }
        return 0;
      }
      if (sim_opts.world.empty() || sim_opts.out_dir.empty()) {
        std::cerr << "error: sim requires --world and --out\n";
        return 1;
      }
      return radpc::cmd_sim(sim_opts);
    }
    if (train->parsed()) {
      train_opts.augment = !no_augment;
      return radpc::cmd_train(train_opts);
    }
    if (eval->parsed()) return radpc::cmd_eval(eval_opts);
    if (pipe->parsed()) return radpc::cmd_pipeline(pipe_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
