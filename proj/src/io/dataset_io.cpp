#include "radpc/io/dataset_io.hpp"

#include <string>

#include <json.hpp>

namespace radpc {

namespace {

using nlohmann::json;

constexpr const char* kDatasetFormat = "radpc-dataset";
constexpr int kDatasetVersion = 1;

json pose_to_json(const Pose2D& p) { return json::array({p.x, p.y, p.psi}); }

Pose2D pose_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json points_to_json(const std::vector<Vec2>& points) {
  json arr = json::array();
  for (const Vec2& p : points) arr.push_back(json::array({p.x(), p.y()}));
  return arr;
}

std::vector<Vec2> points_from_json(const json& j) {
  std::vector<Vec2> points;
  points.reserve(j.size());
  for (const auto& p : j) points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return points;
}

json config_to_json(const SimConfig& cfg) {
  json j;
  j["radar_rate"] = cfg.radar_rate;
  j["lidar_rate"] = cfg.lidar_rate;
  j["seed"] = cfg.seed;
  j["radar"] = {{"range_resolution", cfg.radar.range_resolution},
                {"max_range", cfg.radar.max_range},
                {"azimuth_resolution", cfg.radar.azimuth_resolution},
                {"azimuth_sigma", cfg.radar.azimuth_sigma},
                {"range_sigma", cfg.radar.range_sigma},
                {"velocity_resolution", cfg.radar.velocity_resolution},
                {"fine_ray_step", cfg.radar.fine_ray_step},
                {"dropout_prob", cfg.radar.dropout_prob},
                {"ghost_rate", cfg.radar.ghost_rate},
                {"ghost_min_offset", cfg.radar.ghost_min_offset}};
  j["lidar"] = {{"rays", cfg.lidar.rays}, {"max_range", cfg.lidar.max_range}};
  j["trajectory"] = {{"cruise_speed", cfg.trajectory.cruise_speed},
                     {"accel_limit", cfg.trajectory.accel_limit},
                     {"yaw_rate_limit", cfg.trajectory.yaw_rate_limit},
                     {"heading_gain", cfg.trajectory.heading_gain},
                     {"arrival_tolerance", cfg.trajectory.arrival_tolerance},
                     {"capture_radius", cfg.trajectory.capture_radius},
                     {"initial_speed", cfg.trajectory.initial_speed},
                     {"max_duration", cfg.trajectory.max_duration},
                     {"min_frames", cfg.trajectory.min_frames}};
  j["odometry"] = {{"speed_sigma", cfg.odometry.speed_sigma},
                   {"yaw_rate_sigma", cfg.odometry.yaw_rate_sigma}};
  json sensors = json::array();
  for (const RadarSensorConfig& s : cfg.sensors) {
    sensors.push_back({{"id", s.id},
                       {"mount", json::array({s.mount.x, s.mount.y, s.mount.psi})},
                       {"fov", s.fov}});
  }
  j["sensors"] = std::move(sensors);
  return j;
}

SimConfig config_from_json(const json& j) {
  SimConfig cfg;
  cfg.radar_rate = j.at("radar_rate").get<double>();
  cfg.lidar_rate = j.at("lidar_rate").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  const json& r = j.at("radar");
  cfg.radar.range_resolution = r.at("range_resolution").get<double>();
  cfg.radar.max_range = r.at("max_range").get<double>();
  cfg.radar.azimuth_resolution = r.at("azimuth_resolution").get<double>();
  cfg.radar.azimuth_sigma = r.at("azimuth_sigma").get<double>();
  cfg.radar.range_sigma = r.at("range_sigma").get<double>();
  cfg.radar.velocity_resolution = r.at("velocity_resolution").get<double>();
  cfg.radar.fine_ray_step = r.at("fine_ray_step").get<double>();
  cfg.radar.dropout_prob = r.at("dropout_prob").get<double>();
  cfg.radar.ghost_rate = r.at("ghost_rate").get<double>();
  cfg.radar.ghost_min_offset = r.at("ghost_min_offset").get<double>();
  const json& l = j.at("lidar");
  cfg.lidar.rays = l.at("rays").get<int>();
  cfg.lidar.max_range = l.at("max_range").get<double>();
  const json& t = j.at("trajectory");
  cfg.trajectory.cruise_speed = t.at("cruise_speed").get<double>();
  cfg.trajectory.accel_limit = t.at("accel_limit").get<double>();
  cfg.trajectory.yaw_rate_limit = t.at("yaw_rate_limit").get<double>();
  cfg.trajectory.heading_gain = t.at("heading_gain").get<double>();
  cfg.trajectory.arrival_tolerance = t.at("arrival_tolerance").get<double>();
  cfg.trajectory.capture_radius = t.at("capture_radius").get<double>();
  cfg.trajectory.initial_speed = t.at("initial_speed").get<double>();
  cfg.trajectory.max_duration = t.at("max_duration").get<double>();
  cfg.trajectory.min_frames = t.at("min_frames").get<int>();
  const json& o = j.at("odometry");
  cfg.odometry.speed_sigma = o.at("speed_sigma").get<double>();
  cfg.odometry.yaw_rate_sigma = o.at("yaw_rate_sigma").get<double>();
  for (const auto& s : j.at("sensors")) {
    RadarSensorConfig sensor;
    sensor.id = s.at("id").get<std::string>();
    sensor.mount = pose_from_json(s.at("mount"));
    sensor.fov = s.at("fov").get<double>();
    cfg.sensors.push_back(std::move(sensor));
  }
  return cfg;
}

json record_to_json(const SimFrameRecord& record) {
  json j;
  j["t"] = record.t;
  json radar = json::array();
  for (const RadarFrame& frame : record.radar) {
    json det = json::array();
    for (const RadarDetection& d : frame.detections) {
      det.push_back(json::array({d.dx, d.dy, d.dz, d.dv}));
    }
    radar.push_back({{"id", frame.sensor_id}, {"t", frame.timestamp}, {"det", std::move(det)}});
  }
  j["radar"] = std::move(radar);
  j["odom"] = {{"pose", pose_to_json(record.odometry.pose)},
               {"v", json::array({record.odometry.v.x(), record.odometry.v.y()})},
               {"w", record.odometry.yaw_rate}};
  j["gt"] = pose_to_json(record.gt_pose);
  j["lidar"] = points_to_json(record.lidar);
  return j;
}

SimFrameRecord record_from_json(const json& j) {
  SimFrameRecord record;
  record.t = j.at("t").get<double>();
  for (const auto& f : j.at("radar")) {
    RadarFrame frame;
    frame.sensor_id = f.at("id").get<std::string>();
    frame.timestamp = f.at("t").get<double>();
    for (const auto& d : f.at("det")) {
      frame.detections.push_back({d.at(0).get<double>(), d.at(1).get<double>(),
                                  d.at(2).get<double>(), d.at(3).get<double>()});
    }
    record.radar.push_back(std::move(frame));
  }
  const json& o = j.at("odom");
  record.odometry.pose = pose_from_json(o.at("pose"));
  record.odometry.v = {o.at("v").at(0).get<double>(), o.at("v").at(1).get<double>()};
  record.odometry.yaw_rate = o.at("w").get<double>();
  record.gt_pose = pose_from_json(j.at("gt"));
  record.lidar = points_from_json(j.at("lidar"));
  return record;
}

}  // namespace

void write_dataset(const SimDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset: " + path.string());

  json header;
  header["format"] = kDatasetFormat;
  header["version"] = kDatasetVersion;
  header["config"] = config_to_json(dataset.config);
  header["waypoints"] = points_to_json(dataset.waypoints);
  header["frames"] = dataset.frames.size();
  out << header.dump() << "\n";

  for (const SimFrameRecord& record : dataset.frames) {
    out << record_to_json(record).dump() << "\n";
  }
}

DatasetReader::DatasetReader(const std::filesystem::path& path) : in_(path) {
  if (!in_) throw DataError("cannot open dataset: " + path.string());
  std::string line;
  if (!std::getline(in_, line)) throw DataError("dataset is empty: " + path.string());
  json header;
  try {
    header = json::parse(line);
    if (header.value("format", "") != kDatasetFormat) {
      throw DataError("not a dataset file: " + path.string());
    }
    if (header.value("version", -1) != kDatasetVersion) {
      throw DataError("unsupported dataset version in " + path.string());
    }
    config_ = config_from_json(header.at("config"));
    waypoints_ = points_from_json(header.at("waypoints"));
  } catch (const json::exception& e) {
    throw DataError("malformed dataset header in " + path.string() + ": " + e.what());
  }
}

SensorExtrinsics DatasetReader::extrinsics() const {
  SensorExtrinsics ext;
  for (const RadarSensorConfig& s : config_.sensors) {
    ext.set(s.id, s.mount);
  }
  return ext;
}

std::optional<SimFrameRecord> DatasetReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    if (line.empty()) continue;
    try {
      return record_from_json(json::parse(line));
    } catch (const json::exception&) {
      ++corrupt_;
    }
  }
  return std::nullopt;
}

SimDataset read_dataset(const std::filesystem::path& path) {
  DatasetReader reader(path);
  SimDataset dataset;
  dataset.config = reader.config();
  dataset.waypoints = reader.waypoints();
  while (auto record = reader.next()) {
    dataset.frames.push_back(std::move(*record));
  }
  return dataset;
}

}  // namespace radpc
