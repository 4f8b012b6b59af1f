#pragma once

#include "radpc/core/rng.hpp"
#include "radpc/training/labeling.hpp"

namespace radpc {

struct AugmentConfig {
  bool rotate = true;        // global yaw rotation, uniform in [0, 2*pi)
  bool jitter_pdet = true;   // per-node Gaussian on p_det, clamped to [0, 1]
  bool jitter_xy = true;     // per-node Gaussian on dx and dy independently
  double pdet_sigma = 0.05;
  double xy_sigma = 0.16;    // m
  double graph_radius = 10.0;
};

/// Global yaw rotation of all node coordinates about the origin. Edges are
/// rebuilt from the rotated coordinates; labels are untouched.
LabeledSample rotate_sample(const LabeledSample& sample, double angle, double graph_radius);

/// Applies, in order: rotation, p_det jitter, xy jitter. Edges are rebuilt
/// from the perturbed coordinates; labels and node count never change.
LabeledSample augment_sample(const LabeledSample& sample, const AugmentConfig& cfg, Rng& rng);

}  // namespace radpc
