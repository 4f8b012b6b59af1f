#include "radpc/localization/icp.hpp"

#include <cmath>
#include <stdexcept>

namespace radpc {

std::optional<IcpResult> icp_align(std::span<const Vec2> source, const PointGrid2D& target,
                                   const Pose2D& init, const IcpConfig& cfg) {
  if (source.empty()) throw std::invalid_argument("icp_align requires a non-empty source cloud");
  if (target.empty()) return std::nullopt;

  IcpResult result;
  result.pose = init;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    result.iterations = iter + 1;

    Vec2 src_centroid = Vec2::Zero();
    Vec2 map_centroid = Vec2::Zero();
    std::vector<std::pair<Vec2, Vec2>> pairs;
    pairs.reserve(source.size());
    for (const Vec2& p : source) {
      const Vec2 world = result.pose.apply(p);
      const auto hit = target.nearest_within(world, cfg.max_correspondence);
      if (!hit) continue;
      const Vec2& m = target.points()[static_cast<std::size_t>(hit->index)];
      pairs.emplace_back(world, m);
      src_centroid += world;
      map_centroid += m;
    }
    if (pairs.empty()) return std::nullopt;

    const double inv = 1.0 / static_cast<double>(pairs.size());
    src_centroid *= inv;
    map_centroid *= inv;

    double num = 0.0;
    double den = 0.0;
    for (const auto& [world, m] : pairs) {
      const Vec2 a = world - src_centroid;
      const Vec2 b = m - map_centroid;
      num += a.x() * b.y() - a.y() * b.x();
      den += a.x() * b.x() + a.y() * b.y();
    }
    const double theta = std::atan2(num, den);

    // Incremental rigid fit rotates about the matched source centroid, so
    // the translation part measures the true local shift.
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Vec2 rotated_centroid{c * src_centroid.x() - s * src_centroid.y(),
                                s * src_centroid.x() + c * src_centroid.y()};
    const Vec2 t = map_centroid - rotated_centroid;
    const Pose2D delta{t.x(), t.y(), theta};

    result.pose = compose(delta, result.pose);
    result.fitness = static_cast<double>(pairs.size()) / static_cast<double>(source.size());

    const double shift = (map_centroid - src_centroid).norm();
    if (shift < cfg.translation_epsilon && std::abs(theta) < cfg.rotation_epsilon) break;
  }
  return result;
}

std::optional<IcpResult> icp_align(std::span<const Vec2> source, const ReferenceMap& map,
                                   const Pose2D& init, const IcpConfig& cfg) {
  const PointGrid2D index(map.points, std::max(cfg.max_correspondence, 1e-3));
  return icp_align(source, index, init, cfg);
}

}  // namespace radpc
