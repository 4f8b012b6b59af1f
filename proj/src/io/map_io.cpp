#include "radpc/io/map_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radpc/core/types.hpp"

namespace radpc {

ReferenceMap sample_world_map(const World& world, double spacing) {
  if (spacing <= 0.0) throw ConfigError("map sampling spacing must be positive");
  ReferenceMap map;
  map.resolution = spacing;
  for (const Segment& seg : world.segments) {
    const double length = (seg.b - seg.a).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(length / spacing)));
    for (int k = 0; k <= steps; ++k) {
      const double u = static_cast<double>(k) / steps;
      map.points.push_back(seg.a + u * (seg.b - seg.a));
    }
  }
  return map;
}

void write_map(const ReferenceMap& map, const std::filesystem::path& points_path,
               const std::filesystem::path& meta_path) {
  std::ofstream out(points_path);
  if (!out) throw DataError("cannot write map points: " + points_path.string());
  char buf[80];
  for (const Vec2& p : map.points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }

  nlohmann::json meta;
  meta["format"] = "radpc-map";
  meta["resolution"] = map.resolution;
  meta["points"] = map.points.size();
  std::ofstream meta_out(meta_path);
  if (!meta_out) throw DataError("cannot write map metadata: " + meta_path.string());
  meta_out << meta.dump(2) << "\n";
}

ReferenceMap read_map(const std::filesystem::path& points_path,
                      const std::filesystem::path& meta_path) {
  std::ifstream in(points_path);
  if (!in) throw DataError("cannot open map points: " + points_path.string());
  ReferenceMap map;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x = 0.0;
    double y = 0.0;
    if (!(ss >> x >> y)) {
      throw DataError("bad map point at " + points_path.string() + ":" + std::to_string(line_no));
    }
    map.points.emplace_back(x, y);
  }

  if (!meta_path.empty()) {
    std::ifstream meta_in(meta_path);
    if (meta_in) {
      try {
        nlohmann::json meta;
        meta_in >> meta;
        map.resolution = meta.value("resolution", map.resolution);
      } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed map metadata " + meta_path.string() + ": " + e.what());
      }
    }
  }
  return map;
}

}  // namespace radpc
