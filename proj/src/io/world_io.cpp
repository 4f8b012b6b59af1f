#include "radpc/io/world_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "radpc/core/types.hpp"

namespace radpc {

namespace {

using nlohmann::json;

}  // namespace

WorldFile read_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open world file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed world file " + path.string() + ": " + e.what());
  }

  WorldFile wf;
  try {
    wf.world.extent = j.at("extent").get<double>();
    if (!(wf.world.extent > 0.0)) throw ConfigError("world extent must be positive");

    int index = 0;
    for (const auto& s : j.value("segments", json::array())) {
      if (!s.is_array() || s.size() != 4) {
        throw ConfigError("segment " + std::to_string(index) + " must be [x1, y1, x2, y2]");
      }
      Segment seg{{s.at(0).get<double>(), s.at(1).get<double>()},
                  {s.at(2).get<double>(), s.at(3).get<double>()}};
      if (!wf.world.contains(seg.a) || !wf.world.contains(seg.b)) {
        throw ConfigError("segment " + std::to_string(index) + " lies outside the extent");
      }
      if ((seg.b - seg.a).norm() < 1e-9) {
        throw ConfigError("segment " + std::to_string(index) + " has zero length");
      }
      wf.world.segments.push_back(seg);
      ++index;
    }

    index = 0;
    for (const auto& a : j.value("actors", json::array())) {
      Actor actor;
      actor.position = {a.at("position").at(0).get<double>(), a.at("position").at(1).get<double>()};
      actor.velocity = {a.at("velocity").at(0).get<double>(), a.at("velocity").at(1).get<double>()};
      actor.radius = a.value("radius", actor.radius);
      if (actor.radius <= 0.0) {
        throw ConfigError("actor " + std::to_string(index) + " has non-positive radius");
      }
      if (actor.velocity.norm() > 2.0) {
        throw ConfigError("actor " + std::to_string(index) + " exceeds the 2 m/s speed bound");
      }
      if (!wf.world.contains(actor.position)) {
        throw ConfigError("actor " + std::to_string(index) + " starts outside the extent");
      }
      wf.world.actors.push_back(actor);
      ++index;
    }

    for (const auto& w : j.value("waypoints", json::array())) {
      wf.waypoints.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
    }
  } catch (const json::exception& e) {
    throw ConfigError("malformed world file " + path.string() + ": " + e.what());
  }
  return wf;
}

void write_world(const WorldFile& wf, const std::filesystem::path& path) {
  json j;
  j["extent"] = wf.world.extent;
  json segments = json::array();
  for (const Segment& s : wf.world.segments) {
    segments.push_back(json::array({s.a.x(), s.a.y(), s.b.x(), s.b.y()}));
  }
  j["segments"] = std::move(segments);
  json actors = json::array();
  for (const Actor& a : wf.world.actors) {
    actors.push_back({{"position", json::array({a.position.x(), a.position.y()})},
                      {"velocity", json::array({a.velocity.x(), a.velocity.y()})},
                      {"radius", a.radius}});
  }
  j["actors"] = std::move(actors);
  json waypoints = json::array();
  for (const Vec2& w : wf.waypoints) {
    waypoints.push_back(json::array({w.x(), w.y()}));
  }
  j["waypoints"] = std::move(waypoints);

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write world file: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace radpc
