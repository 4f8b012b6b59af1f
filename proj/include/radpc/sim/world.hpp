#pragma once

#include <optional>
#include <vector>

#include "radpc/core/geometry.hpp"

namespace radpc {

struct Segment {
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
};

/// Moving circular obstacle (pedestrian-like, speeds kept under ~2 m/s).
struct Actor {
  Vec2 position = Vec2::Zero();  // world, m
  Vec2 velocity = Vec2::Zero();  // world, m/s
  double radius = 0.30;          // m
};

/// Axis-aligned square world [-extent, extent]^2 with line-segment walls and
/// dynamic actors.
struct World {
  double extent = 12.0;  // m
  std::vector<Segment> segments;
  std::vector<Actor> actors;

  bool contains(const Vec2& p) const {
    return std::abs(p.x()) <= extent && std::abs(p.y()) <= extent;
  }
};

/// Advance actors by dt, bouncing off the extent box. When an avoid point
/// is given, actors within `standoff` of it turn away, the way pedestrians
/// keep clear of a moving vehicle.
void step_actors(World& world, double dt);
void step_actors(World& world, double dt, const Vec2& avoid, double standoff);

struct RayHit {
  double range = 0.0;
  bool dynamic = false;          // true when an actor was hit
  Vec2 velocity = Vec2::Zero();  // world velocity of the hit surface
};

/// First hit along origin + t * dir (dir unit), t in (eps, max_range].
std::optional<RayHit> ray_cast(const World& world, const Vec2& origin, const Vec2& dir,
                               double max_range);

/// Distance along the ray to the segment, if intersected.
std::optional<double> ray_segment_intersection(const Vec2& origin, const Vec2& dir,
                                               const Segment& seg);

/// Distance along the ray to the circle surface, if intersected.
std::optional<double> ray_circle_intersection(const Vec2& origin, const Vec2& dir,
                                              const Vec2& center, double radius);

/// Reflection of p across the segment's supporting line.
Vec2 mirror_point(const Vec2& p, const Segment& seg);

/// Axis-aligned rectangle as four wall segments.
void add_box(World& world, const Vec2& lo, const Vec2& hi);

}  // namespace radpc
