#pragma once

#include <span>
#include <vector>

#include "radpc/core/geometry.hpp"

namespace radpc {

/// Index-aligned estimated and ground-truth trajectories of equal length.
struct TrajectoryPair {
  std::vector<Pose2D> estimate;
  std::vector<Pose2D> truth;
};

struct FrameError {
  double translation = 0.0;  // m
  double heading = 0.0;      // rad, wrapped magnitude
};

/// Absolute trajectory error per frame: position offset norm and wrapped
/// heading offset magnitude.
std::vector<FrameError> ate(const TrajectoryPair& pair);

/// Relative trajectory error per frame: difference of consecutive deltas.
/// Requires at least two frames.
std::vector<FrameError> rte(const TrajectoryPair& pair);

struct MetricSummary {
  double mean = 0.0;
  double tail90 = 0.0;  // nearest-rank 90th percentile
};

/// Nearest-rank percentile: value at rank ceil(fraction * n) of the sorted
/// series, fraction in (0, 1].
double nearest_rank_percentile(std::span<const double> series, double fraction);

/// Mean and nearest-rank 90th percentile of a non-empty series.
MetricSummary summarize(std::span<const double> series);

}  // namespace radpc
