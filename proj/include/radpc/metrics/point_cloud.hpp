#pragma once

#include <span>
#include <vector>

#include "radpc/core/geometry.hpp"

namespace radpc {

/// Per-point distance form. The Euclidean form matches reports in meters;
/// the squared form is kept switchable for consumers that want it.
enum class DistanceForm {
  kEuclidean,
  kSquaredEuclidean,
};

/// Nearest-reference distance for every cloud point (plain Euclidean).
/// Throws std::invalid_argument when either set is empty.
std::vector<double> nearest_distances(std::span<const Vec2> cloud,
                                      std::span<const Vec2> reference);

/// One-way Chamfer: sum of nearest-reference distances over the cloud,
/// divided by twice the cloud size.
double chamfer_one_way(std::span<const Vec2> cloud, std::span<const Vec2> reference,
                       DistanceForm form = DistanceForm::kEuclidean);

/// One-way Hausdorff: largest nearest-reference distance over the cloud.
double hausdorff_one_way(std::span<const Vec2> cloud, std::span<const Vec2> reference,
                         DistanceForm form = DistanceForm::kEuclidean);

}  // namespace radpc
