#include "radpc/training/augment.hpp"

#include <algorithm>
#include <cmath>

namespace radpc {

LabeledSample rotate_sample(const LabeledSample& sample, double angle, double graph_radius) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::MatrixXd features = sample.graph.nodes;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const double x = features(i, 0);
    const double y = features(i, 1);
    features(i, 0) = c * x - s * y;
    features(i, 1) = s * x + c * y;
  }
  LabeledSample out;
  out.graph = build_graph(features, graph_radius);
  out.labels = sample.labels;
  out.frame_id = sample.frame_id;
  out.environment = sample.environment;
  return out;
}

LabeledSample augment_sample(const LabeledSample& sample, const AugmentConfig& cfg, Rng& rng) {
  Eigen::MatrixXd features = sample.graph.nodes;

  if (cfg.rotate) {
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      const double x = features(i, 0);
      const double y = features(i, 1);
      features(i, 0) = c * x - s * y;
      features(i, 1) = s * x + c * y;
    }
  }

  if (cfg.jitter_pdet) {
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      features(i, 3) = std::clamp(features(i, 3) + rng.normal(0.0, cfg.pdet_sigma), 0.0, 1.0);
    }
  }

  if (cfg.jitter_xy) {
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      features(i, 0) += rng.normal(0.0, cfg.xy_sigma);
      features(i, 1) += rng.normal(0.0, cfg.xy_sigma);
    }
  }

  LabeledSample out;
  out.graph = build_graph(features, cfg.graph_radius);
  out.labels = sample.labels;
  out.frame_id = sample.frame_id;
  out.environment = sample.environment;
  return out;
}

}  // namespace radpc
