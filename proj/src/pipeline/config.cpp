#include "radpc/pipeline/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "radpc/core/types.hpp"

namespace radpc {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key '" + scope + key + "'");
    }
  }
}

double require_positive(double value, const std::string& name) {
  if (!(value > 0.0)) throw ConfigError("config value '" + name + "' must be positive");
  return value;
}

}  // namespace

void validate_pipeline_config(const PipelineConfig& cfg) {
  if (cfg.min_range < 0.0) throw ConfigError("min_range must be non-negative");
  require_positive(cfg.dynamic_threshold, "dynamic_threshold");
  require_positive(cfg.grid.resolution, "grid.resolution");
  if (cfg.grid.extent_max <= cfg.grid.extent_min) throw ConfigError("grid extent is empty");
  if (cfg.grid.window < 1) throw ConfigError("grid.window must be at least 1");
  require_positive(cfg.graph_radius, "graph_radius");
  require_positive(cfg.label_tolerance, "label_tolerance");
  if (cfg.history_length < 1) throw ConfigError("history_length must be at least 1");
  if (cfg.decision_threshold <= 0.0 || cfg.decision_threshold >= 1.0) {
    throw ConfigError("decision_threshold must be inside (0, 1)");
  }
  require_positive(cfg.localization.process_sigma_xy, "localization.process_sigma_xy");
  require_positive(cfg.localization.process_sigma_psi, "localization.process_sigma_psi");
  require_positive(cfg.localization.meas_sigma_xy, "localization.meas_sigma_xy");
  require_positive(cfg.localization.meas_sigma_psi, "localization.meas_sigma_psi");
  if (cfg.localization.gate_p_valid <= 0.0 || cfg.localization.gate_p_valid >= 1.0) {
    throw ConfigError("localization.gate_p_valid must be inside (0, 1)");
  }
  if (cfg.localization.min_fitness < 0.0 || cfg.localization.min_fitness > 1.0) {
    throw ConfigError("localization.min_fitness must be inside [0, 1]");
  }
  require_positive(cfg.localization.icp.max_correspondence, "localization.icp.max_correspondence");
  if (cfg.localization.icp.max_iterations < 1) {
    throw ConfigError("localization.icp.max_iterations must be at least 1");
  }
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  reject_unknown_keys(j,
                      {"min_range", "dynamic_threshold", "grid", "graph_radius",
                       "label_tolerance", "history_length", "decision_threshold",
                       "metric_distance", "localization"},
                      "");

  PipelineConfig cfg;
  try {
    cfg.min_range = j.value("min_range", cfg.min_range);
    cfg.dynamic_threshold = j.value("dynamic_threshold", cfg.dynamic_threshold);
    if (j.contains("grid")) {
      const json& g = j["grid"];
      reject_unknown_keys(g, {"resolution", "extent_min", "extent_max", "window"}, "grid.");
      cfg.grid.resolution = g.value("resolution", cfg.grid.resolution);
      cfg.grid.extent_min = g.value("extent_min", cfg.grid.extent_min);
      cfg.grid.extent_max = g.value("extent_max", cfg.grid.extent_max);
      cfg.grid.window = g.value("window", cfg.grid.window);
    }
    cfg.graph_radius = j.value("graph_radius", cfg.graph_radius);
    cfg.label_tolerance = j.value("label_tolerance", cfg.label_tolerance);
    cfg.history_length = j.value("history_length", cfg.history_length);
    cfg.decision_threshold = j.value("decision_threshold", cfg.decision_threshold);
    if (j.contains("metric_distance")) {
      const std::string form = j["metric_distance"].get<std::string>();
      if (form == "euclidean") {
        cfg.metric_distance = DistanceForm::kEuclidean;
      } else if (form == "squared") {
        cfg.metric_distance = DistanceForm::kSquaredEuclidean;
      } else {
        throw ConfigError("metric_distance must be 'euclidean' or 'squared'");
      }
    }
    if (j.contains("localization")) {
      const json& l = j["localization"];
      reject_unknown_keys(l,
                          {"process_sigma_xy", "process_sigma_psi", "meas_sigma_xy",
                           "meas_sigma_psi", "gate_p_valid", "min_fitness", "icp"},
                          "localization.");
      auto& loc = cfg.localization;
      loc.process_sigma_xy = l.value("process_sigma_xy", loc.process_sigma_xy);
      loc.process_sigma_psi = l.value("process_sigma_psi", loc.process_sigma_psi);
      loc.meas_sigma_xy = l.value("meas_sigma_xy", loc.meas_sigma_xy);
      loc.meas_sigma_psi = l.value("meas_sigma_psi", loc.meas_sigma_psi);
      loc.gate_p_valid = l.value("gate_p_valid", loc.gate_p_valid);
      loc.min_fitness = l.value("min_fitness", loc.min_fitness);
      if (l.contains("icp")) {
        const json& i = l["icp"];
        reject_unknown_keys(
            i, {"max_correspondence", "max_iterations", "translation_epsilon", "rotation_epsilon"},
            "localization.icp.");
        loc.icp.max_correspondence = i.value("max_correspondence", loc.icp.max_correspondence);
        loc.icp.max_iterations = i.value("max_iterations", loc.icp.max_iterations);
        loc.icp.translation_epsilon = i.value("translation_epsilon", loc.icp.translation_epsilon);
        loc.icp.rotation_epsilon = i.value("rotation_epsilon", loc.icp.rotation_epsilon);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }

  validate_pipeline_config(cfg);
  return cfg;
}

void save_pipeline_config(const PipelineConfig& cfg, const std::filesystem::path& path) {
  json j;
  j["min_range"] = cfg.min_range;
  j["dynamic_threshold"] = cfg.dynamic_threshold;
  j["grid"]["resolution"] = cfg.grid.resolution;
  j["grid"]["extent_min"] = cfg.grid.extent_min;
  j["grid"]["extent_max"] = cfg.grid.extent_max;
  j["grid"]["window"] = cfg.grid.window;
  j["graph_radius"] = cfg.graph_radius;
  j["label_tolerance"] = cfg.label_tolerance;
  j["history_length"] = cfg.history_length;
  j["decision_threshold"] = cfg.decision_threshold;
  j["metric_distance"] =
      cfg.metric_distance == DistanceForm::kSquaredEuclidean ? "squared" : "euclidean";
  json l;
  l["process_sigma_xy"] = cfg.localization.process_sigma_xy;
  l["process_sigma_psi"] = cfg.localization.process_sigma_psi;
  l["meas_sigma_xy"] = cfg.localization.meas_sigma_xy;
  l["meas_sigma_psi"] = cfg.localization.meas_sigma_psi;
  l["gate_p_valid"] = cfg.localization.gate_p_valid;
  l["min_fitness"] = cfg.localization.min_fitness;
  l["icp"]["max_correspondence"] = cfg.localization.icp.max_correspondence;
  l["icp"]["max_iterations"] = cfg.localization.icp.max_iterations;
  l["icp"]["translation_epsilon"] = cfg.localization.icp.translation_epsilon;
  l["icp"]["rotation_epsilon"] = cfg.localization.icp.rotation_epsilon;
  j["localization"] = std::move(l);

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace radpc
