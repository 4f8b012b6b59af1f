#include "radpc/metrics/point_cloud.hpp"

#include <algorithm>
#include <stdexcept>

#include "radpc/core/point_grid.hpp"

namespace radpc {

std::vector<double> nearest_distances(std::span<const Vec2> cloud,
                                      std::span<const Vec2> reference) {
  if (cloud.empty() || reference.empty()) {
    throw std::invalid_argument("point-cloud metrics are undefined for empty sets");
  }
  const PointGrid2D index =
      PointGrid2D::with_auto_cell(std::vector<Vec2>(reference.begin(), reference.end()));
  std::vector<double> distances;
  distances.reserve(cloud.size());
  for (const Vec2& p : cloud) {
    distances.push_back(index.nearest(p)->distance);
  }
  return distances;
}

double chamfer_one_way(std::span<const Vec2> cloud, std::span<const Vec2> reference,
                       DistanceForm form) {
  const std::vector<double> distances = nearest_distances(cloud, reference);
  double sum = 0.0;
  for (double d : distances) {
    sum += form == DistanceForm::kSquaredEuclidean ? d * d : d;
  }
  return sum / (2.0 * static_cast<double>(distances.size()));
}

double hausdorff_one_way(std::span<const Vec2> cloud, std::span<const Vec2> reference,
                         DistanceForm form) {
  const std::vector<double> distances = nearest_distances(cloud, reference);
  const double worst = *std::max_element(distances.begin(), distances.end());
  return form == DistanceForm::kSquaredEuclidean ? worst * worst : worst;
}

}  // namespace radpc
