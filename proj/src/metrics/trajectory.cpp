#include "radpc/metrics/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radpc {

namespace {

void require_aligned(const TrajectoryPair& pair) {
  if (pair.estimate.size() != pair.truth.size()) {
    throw std::invalid_argument("trajectory pair lengths differ");
  }
}

}  // namespace

std::vector<FrameError> ate(const TrajectoryPair& pair) {
  require_aligned(pair);
  std::vector<FrameError> errors;
  errors.reserve(pair.estimate.size());
  for (std::size_t i = 0; i < pair.estimate.size(); ++i) {
    FrameError e;
    e.translation = (pair.estimate[i].translation() - pair.truth[i].translation()).norm();
    e.heading = std::abs(wrap_angle(pair.estimate[i].psi - pair.truth[i].psi));
    errors.push_back(e);
  }
  return errors;
}

std::vector<FrameError> rte(const TrajectoryPair& pair) {
  require_aligned(pair);
  if (pair.estimate.size() < 2) {
    throw std::invalid_argument("relative trajectory error needs at least two frames");
  }
  std::vector<FrameError> errors;
  errors.reserve(pair.estimate.size() - 1);
  for (std::size_t i = 1; i < pair.estimate.size(); ++i) {
    const Vec2 est_delta = pair.estimate[i].translation() - pair.estimate[i - 1].translation();
    const Vec2 gt_delta = pair.truth[i].translation() - pair.truth[i - 1].translation();
    const double est_dpsi = wrap_angle(pair.estimate[i].psi - pair.estimate[i - 1].psi);
    const double gt_dpsi = wrap_angle(pair.truth[i].psi - pair.truth[i - 1].psi);
    FrameError e;
    e.translation = (est_delta - gt_delta).norm();
    e.heading = std::abs(wrap_angle(est_dpsi - gt_dpsi));
    errors.push_back(e);
  }
  return errors;
}

double nearest_rank_percentile(std::span<const double> series, double fraction) {
  if (series.empty()) throw std::invalid_argument("percentile of an empty series");
  if (fraction <= 0.0 || fraction > 1.0) throw std::invalid_argument("fraction must be in (0, 1]");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(sorted.size()) - 1e-12));
  return sorted[std::min(sorted.size() - 1, std::max<std::size_t>(rank, 1) - 1)];
}

MetricSummary summarize(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("summary of an empty series");
  double sum = 0.0;
  for (double v : series) sum += v;
  MetricSummary summary;
  summary.mean = sum / static_cast<double>(series.size());
  summary.tail90 = nearest_rank_percentile(series, 0.90);
  return summary;
}

}  // namespace radpc
