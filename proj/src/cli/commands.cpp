#include "radpc/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "radpc/io/dataset_io.hpp"
#include "radpc/io/map_io.hpp"
#include "radpc/io/world_io.hpp"
#include "radpc/metrics/point_cloud.hpp"
#include "radpc/pipeline/dataset_runner.hpp"
#include "radpc/sim/presets.hpp"
#include "radpc/training/trainer.hpp"

namespace radpc {

namespace {

namespace fs = std::filesystem;

bool is_preset_name(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

PipelineConfig config_or_default(const fs::path& path) {
  if (path.empty()) return PipelineConfig{};
  return load_pipeline_config(path);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct CloudQuality {
  std::vector<double> cd;
  std::vector<double> hd;
  double points_sum = 0.0;
  long frames = 0;
  long empty_frames = 0;

  void add(const std::vector<Vec2>& cloud, const std::vector<Vec2>& lidar, DistanceForm form) {
    if (cloud.empty()) {
      ++empty_frames;
      return;
    }
    cd.push_back(chamfer_one_way(cloud, lidar, form));
    hd.push_back(hausdorff_one_way(cloud, lidar, form));
    points_sum += static_cast<double>(cloud.size());
    ++frames;
  }

  double avg_points() const { return frames > 0 ? points_sum / frames : 0.0; }
};

}  // namespace

int cmd_sim(const SimCommandOptions& opts) {
  World world;
  std::vector<Vec2> waypoints;
  SimConfig cfg;
  cfg.sensors = default_sensor_pair();
  cfg.seed = opts.seed;

  if (is_preset_name(opts.world)) {
    ScenarioPreset preset = make_preset(opts.world, opts.seed);
    world = std::move(preset.world);
    waypoints = std::move(preset.waypoints);
    cfg = std::move(preset.config);
    cfg.seed = opts.seed;
  } else {
    const WorldFile wf = read_world(opts.world);
    world = wf.world;
    waypoints = wf.waypoints;
  }

  if (opts.ghost_rate >= 0.0) cfg.radar.ghost_rate = opts.ghost_rate;
  if (opts.dropout >= 0.0) cfg.radar.dropout_prob = opts.dropout;

  fs::create_directories(opts.out_dir);
  const SimDataset dataset = simulate_trajectory(world, waypoints, cfg);

  write_dataset(dataset, opts.out_dir / "dataset.jsonl");
  write_world({world, waypoints}, opts.out_dir / "world.json");
  const ReferenceMap map = sample_world_map(world, opts.map_spacing);
  write_map(map, opts.out_dir / "map_points.txt", opts.out_dir / "map_meta.json");

  double detections = 0.0;
  for (const SimFrameRecord& record : dataset.frames) {
    for (const RadarFrame& frame : record.radar) {
      detections += static_cast<double>(frame.detections.size());
    }
  }
  const PipelineConfig pipeline_cfg;
  const double false_fraction =
      naive_false_fraction(dataset, pipeline_cfg, pipeline_cfg.label_tolerance);

  std::cout << "scenario: " << opts.world << " (seed " << cfg.seed << ")\n"
            << "frames: " << dataset.frames.size() << " at " << cfg.radar_rate << " Hz\n"
            << "detections/frame: " << fmt(detections / std::max<std::size_t>(1, dataset.frames.size()))
            << "\n"
            << "naive false-detection fraction: " << fmt(false_fraction) << "\n"
            << "map points: " << map.points.size() << "\n"
            << "wrote " << (opts.out_dir / "dataset.jsonl").string() << "\n";
  return 0;
}

int cmd_train(const TrainCommandOptions& opts) {
  const PipelineConfig cfg = config_or_default(opts.config);

  const SimDataset train_data = read_dataset(opts.dataset);
  SampleBuildOptions build_opts;
  build_opts.environment = 0;
  std::vector<LabeledSample> train_samples = build_labeled_samples(train_data, cfg, build_opts);

  std::vector<LabeledSample> val_samples;
  if (!opts.val_dataset.empty()) {
    const SimDataset val_data = read_dataset(opts.val_dataset);
    build_opts.environment = 1;
    val_samples = build_labeled_samples(val_data, cfg, build_opts);
  } else if (opts.val_fraction > 0.0 && train_samples.size() > 1) {
    // Temporal tail split keeps train and validation frames disjoint in time.
    const auto n_val = std::min(train_samples.size() - 1,
                                static_cast<std::size_t>(opts.val_fraction * train_samples.size()));
    val_samples.assign(train_samples.end() - n_val, train_samples.end());
    train_samples.erase(train_samples.end() - n_val, train_samples.end());
  }

  if (train_samples.empty()) {
    std::cerr << "error: dataset produced no training samples\n";
    return 1;
  }

  TrainConfig train_cfg;
  train_cfg.epochs = opts.epochs;
  train_cfg.learning_rate = opts.learning_rate;
  train_cfg.seed = opts.seed;
  train_cfg.augment = opts.augment;
  train_cfg.augmentation.graph_radius = cfg.graph_radius;
  train_cfg.decision_threshold = cfg.decision_threshold;

  fs::create_directories(opts.out_dir);
  const fs::path metrics_path = opts.out_dir / "metrics.csv";

  bool resume_append = false;
  if (!opts.resume.empty()) {
    // Continue epoch numbering from an existing metrics file, when present.
    std::ifstream metrics_in(metrics_path);
    std::string line;
    std::string last;
    while (std::getline(metrics_in, line)) {
      if (!line.empty() && line.find("epoch") != 0) last = line;
    }
    if (!last.empty()) {
      train_cfg.start_epoch = std::atoi(last.c_str()) + 1;
      resume_append = true;
    }
  }

  TrainResult result;
  if (!opts.resume.empty()) {
    result = train(train_samples, val_samples, train_cfg, load_params(opts.resume));
  } else {
    result = train(train_samples, val_samples, train_cfg);
  }

  const fs::path checkpoint_path = opts.out_dir / "checkpoint.json";
  save_params(result.params, checkpoint_path);

  std::ofstream metrics(metrics_path, resume_append ? std::ios::app : std::ios::trunc);
  if (!resume_append) metrics << "epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
  for (const EpochStats& e : result.history) {
    metrics << e.epoch << "," << fmt(e.train_loss) << "," << fmt(e.train_accuracy) << ","
            << fmt(e.val_loss) << "," << fmt(e.val_accuracy) << "\n";
  }

  std::cout << "samples: " << train_samples.size() << " train, " << val_samples.size()
            << " val\n";
  if (!result.history.empty()) {
    const EpochStats& last = result.history.back();
    std::cout << "epoch " << last.epoch << ": train loss " << fmt(last.train_loss) << " acc "
              << fmt(last.train_accuracy) << ", val loss " << fmt(last.val_loss) << " acc "
              << fmt(last.val_accuracy) << "\n";
  }
  std::cout << "wrote " << checkpoint_path.string() << "\n";
  return 0;
}

int cmd_eval(const EvalCommandOptions& opts) {
  if (opts.datasets.empty()) {
    std::cerr << "error: eval needs at least one dataset\n";
    return 1;
  }
  const PipelineConfig cfg = config_or_default(opts.config);
  const ModelParams params = load_params(opts.checkpoint);


  nlohmann::json report = nlohmann::json::array();
  fs::create_directories(opts.out_dir);
  std::ofstream csv(opts.out_dir / "report.csv");
  csv << "dataset,method,frames,avg_points,cd_mean,cd_tail90,hd_mean,hd_tail90"
      << ",ate_tr_mean,ate_hd_mean,rte_tr_mean,rte_hd_mean\n";

  for (std::size_t d = 0; d < opts.datasets.size(); ++d) {
    const std::string label = d < opts.labels.size()
                                  ? opts.labels[d]
                                  : (d == 0 ? std::string("seen") : std::string("unseen"));
    std::optional<ReferenceMap> map;
    if (d < opts.maps.size() && !opts.maps[d].empty()) {
      map = read_map(opts.maps[d]);
    }
    const SimDataset dataset = read_dataset(opts.datasets[d]);
    const auto model_run =
        run_pipeline_over_dataset(dataset, cfg, params, Pipeline::Classifier::kModel);
    const auto bypass_run =
        run_pipeline_over_dataset(dataset, cfg, ModelParams{}, Pipeline::Classifier::kAllValid);

    const std::size_t warmup = static_cast<std::size_t>(cfg.grid.window);
    CloudQuality naive;
    CloudQuality bypass;
    CloudQuality enhanced;
    for (std::size_t i = warmup; i < model_run.size(); ++i) {
      if (model_run[i].lidar.empty()) continue;
      naive.add(model_run[i].naive_cloud, model_run[i].lidar, cfg.metric_distance);
      bypass.add(bypass_run[i].enhanced_cloud, model_run[i].lidar, cfg.metric_distance);
      enhanced.add(model_run[i].enhanced_cloud, model_run[i].lidar, cfg.metric_distance);
    }

    struct Row {
      std::string method;
      const CloudQuality* quality;
      const std::vector<DatasetFrameResult>* run;
      bool use_enhanced;
      bool localize;
    };
    // The all-valid diagnostic row skips trajectory metrics: matching its
    // uncut clouds triples the ICP cost without informing the comparison.
    const Row rows[] = {{"naive", &naive, &model_run, false, true},
                        {"all-valid", &bypass, &bypass_run, true, false},
                        {"enhanced", &enhanced, &model_run, true, true}};

    for (const Row& row : rows) {
      nlohmann::json entry;
      entry["dataset"] = label;
      entry["method"] = row.method;
      entry["frames"] = row.quality->frames;
      entry["avg_points"] = row.quality->avg_points();
      std::string ate_tr = "", ate_hd = "", rte_tr = "", rte_hd = "";
      if (!row.quality->cd.empty()) {
        const MetricSummary cd = summarize(row.quality->cd);
        const MetricSummary hd = summarize(row.quality->hd);
        entry["cd_mean"] = cd.mean;
        entry["cd_tail90"] = cd.tail90;
        entry["hd_mean"] = hd.mean;
        entry["hd_tail90"] = hd.tail90;
        csv << label << "," << row.method << "," << row.quality->frames << ","
            << fmt(row.quality->avg_points()) << "," << fmt(cd.mean) << "," << fmt(cd.tail90)
            << "," << fmt(hd.mean) << "," << fmt(hd.tail90);
      } else {
        csv << label << "," << row.method << ",0,0,,,,";
      }
      if (map && row.localize && model_run.size() > warmup + 1) {
        const LocalizationEval loc =
            evaluate_localization(*row.run, *map, cfg.localization, row.use_enhanced, warmup);
        entry["ate_tr_mean"] = loc.ate_translation.mean;
        entry["ate_hd_mean"] = loc.ate_heading.mean;
        entry["rte_tr_mean"] = loc.rte_translation.mean;
        entry["rte_hd_mean"] = loc.rte_heading.mean;
        csv << "," << fmt(loc.ate_translation.mean) << "," << fmt(loc.ate_heading.mean) << ","
            << fmt(loc.rte_translation.mean) << "," << fmt(loc.rte_heading.mean) << "\n";
      } else {
        csv << ",,,,\n";
      }
      report.push_back(std::move(entry));

      std::cout << label << " / " << row.method << ": ";
      if (!row.quality->cd.empty()) {
        const MetricSummary cd = summarize(row.quality->cd);
        const MetricSummary hd = summarize(row.quality->hd);
        std::cout << "points " << fmt(row.quality->avg_points()) << ", CD " << fmt(cd.mean)
                  << " (tail " << fmt(cd.tail90) << "), HD " << fmt(hd.mean) << " (tail "
                  << fmt(hd.tail90) << ")";
      } else {
        std::cout << "no scored frames";
      }
      std::cout << "\n";
    }
  }

  std::ofstream json_out(opts.out_dir / "report.json");
  json_out << report.dump(2) << "\n";
  std::cout << "wrote " << (opts.out_dir / "report.csv").string() << "\n";
  return 0;
}

int cmd_pipeline(const PipelineCommandOptions& opts) {
  const PipelineConfig cfg = config_or_default(opts.config);
  const ModelParams params = load_params(opts.checkpoint);

  DatasetReader reader(opts.dataset);
  Pipeline pipeline(cfg, reader.extrinsics(), params);

  fs::create_directories(opts.out_dir);
  std::ofstream clouds(opts.out_dir / "enhanced.jsonl");

  std::vector<double> pre_ms, graph_ms, fwd_ms, hist_ms, total_ms;
  long frame_id = 0;
  while (auto record = reader.next()) {
    const Pipeline::FrameOutput out = pipeline.process(record->radar, record->odometry, frame_id);

    nlohmann::json j;
    j["frame"] = frame_id;
    j["t"] = record->t;
    nlohmann::json pts = nlohmann::json::array();
    for (const Vec2& p : out.enhanced_cloud) {
      pts.push_back(nlohmann::json::array({p.x(), p.y()}));
    }
    j["points"] = std::move(pts);
    clouds << j.dump() << "\n";

    pre_ms.push_back(out.latency.preprocess_s * 1e3);
    graph_ms.push_back(out.latency.graph_s * 1e3);
    fwd_ms.push_back(out.latency.forward_s * 1e3);
    hist_ms.push_back(out.latency.history_s * 1e3);
    total_ms.push_back(out.latency.total() * 1e3);
    ++frame_id;
  }

  if (frame_id == 0) {
    std::cerr << "error: dataset has no readable frames\n";
    return 1;
  }

  std::ofstream latency(opts.out_dir / "latency.csv");
  latency << "stage,mean_ms,p99_ms\n";
  const auto emit = [&](const std::string& stage, const std::vector<double>& series) {
    const MetricSummary s = summarize(series);
    const double p99 = nearest_rank_percentile(series, 0.99);
    latency << stage << "," << fmt(s.mean) << "," << fmt(p99) << "\n";
    std::cout << stage << ": mean " << fmt(s.mean) << " ms, p99 " << fmt(p99) << " ms\n";
  };
  emit("preprocess", pre_ms);
  emit("graph", graph_ms);
  emit("forward", fwd_ms);
  emit("history", hist_ms);
  emit("total", total_ms);

  std::cout << "frames: " << frame_id << ", corrupt records skipped: " << reader.corrupt_records()
            << "\n";
  if (reader.corrupt_records() > 0) {
    std::cerr << "warning: " << reader.corrupt_records() << " corrupt records skipped\n";
  }
  std::cout << "wrote " << (opts.out_dir / "enhanced.jsonl").string() << "\n";
  return 0;
}

}  // namespace radpc
