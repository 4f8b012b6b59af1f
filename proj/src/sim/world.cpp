#include "radpc/sim/world.hpp"

#include <cmath>

namespace radpc {

namespace {

constexpr double kRayEps = 1e-9;

}  // namespace

void step_actors(World& world, double dt) {
  step_actors(world, dt, Vec2::Zero(), 0.0);
}

void step_actors(World& world, double dt, const Vec2& avoid, double standoff) {
  for (Actor& actor : world.actors) {
    if (standoff > 0.0) {
      const Vec2 away = actor.position - avoid;
      const double dist = away.norm();
      if (dist < standoff && dist > 1e-9 && actor.velocity.dot(away) < 0.0) {
        // Turn the approach component around, keeping speed.
        const Vec2 n = away / dist;
        actor.velocity -= 2.0 * actor.velocity.dot(n) * n;
      }
    }
    actor.position += actor.velocity * dt;
    const double bound = world.extent - actor.radius;
    for (int axis = 0; axis < 2; ++axis) {
      if (actor.position(axis) > bound) {
        actor.position(axis) = bound;
        actor.velocity(axis) = -std::abs(actor.velocity(axis));
      } else if (actor.position(axis) < -bound) {
        actor.position(axis) = -bound;
        actor.velocity(axis) = std::abs(actor.velocity(axis));
      }
    }
  }
}

std::optional<double> ray_segment_intersection(const Vec2& origin, const Vec2& dir,
                                               const Segment& seg) {
  const Vec2 e = seg.b - seg.a;
  const double denom = dir.x() * e.y() - dir.y() * e.x();
  if (std::abs(denom) < 1e-15) return std::nullopt;  // parallel
  const Vec2 ao = seg.a - origin;
  const double t = (ao.x() * e.y() - ao.y() * e.x()) / denom;
  const double u = (ao.x() * dir.y() - ao.y() * dir.x()) / denom;
  if (t <= kRayEps || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<double> ray_circle_intersection(const Vec2& origin, const Vec2& dir,
                                              const Vec2& center, double radius) {
  const Vec2 oc = origin - center;
  const double b = 2.0 * oc.dot(dir);
  const double c = oc.squaredNorm() - radius * radius;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double t1 = 0.5 * (-b - sq);
  if (t1 > kRayEps) return t1;
  const double t2 = 0.5 * (-b + sq);
  if (t2 > kRayEps) return t2;  // origin inside the circle
  return std::nullopt;
}

std::optional<RayHit> ray_cast(const World& world, const Vec2& origin, const Vec2& dir,
                               double max_range) {
  std::optional<RayHit> best;
  for (const Segment& seg : world.segments) {
    const auto t = ray_segment_intersection(origin, dir, seg);
    if (t && *t <= max_range && (!best || *t < best->range)) {
      best = RayHit{*t, false, Vec2::Zero()};
    }
  }
  for (const Actor& actor : world.actors) {
    const auto t = ray_circle_intersection(origin, dir, actor.position, actor.radius);
    if (t && *t <= max_range && (!best || *t < best->range)) {
      best = RayHit{*t, true, actor.velocity};
    }
  }
  return best;
}

Vec2 mirror_point(const Vec2& p, const Segment& seg) {
  const Vec2 e = seg.b - seg.a;
  const double len_sq = e.squaredNorm();
  if (len_sq < 1e-18) return p;  // degenerate segment
  const Vec2 d = p - seg.a;
  const Vec2 proj = seg.a + e * (d.dot(e) / len_sq);
  return 2.0 * proj - p;
}

void add_box(World& world, const Vec2& lo, const Vec2& hi) {
  const Vec2 bl{lo.x(), lo.y()};
  const Vec2 br{hi.x(), lo.y()};
  const Vec2 tr{hi.x(), hi.y()};
  const Vec2 tl{lo.x(), hi.y()};
  world.segments.push_back({bl, br});
  world.segments.push_back({br, tr});
  world.segments.push_back({tr, tl});
  world.segments.push_back({tl, bl});
}

}  // namespace radpc
