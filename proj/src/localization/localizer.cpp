#include "radpc/localization/localizer.hpp"

#include <algorithm>

namespace radpc {

Eigen::Matrix3d LocalizationConfig::process_noise() const {
  Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
  q(0, 0) = process_sigma_xy * process_sigma_xy;
  q(1, 1) = process_sigma_xy * process_sigma_xy;
  q(2, 2) = process_sigma_psi * process_sigma_psi;
  return q;
}

Eigen::Matrix3d LocalizationConfig::measurement_noise(double fitness) const {
  // Trust scales with match quality; a poor fit inflates R.
  const double scale = 1.0 / std::clamp(fitness, 0.1, 1.0);
  Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
  r(0, 0) = meas_sigma_xy * meas_sigma_xy * scale;
  r(1, 1) = meas_sigma_xy * meas_sigma_xy * scale;
  r(2, 2) = meas_sigma_psi * meas_sigma_psi * scale;
  return r;
}

Localizer::Localizer(ReferenceMap map, const LocalizationConfig& cfg, const EkfState& init)
    : map_(std::move(map)),
      map_index_(map_.points, std::max(cfg.icp.max_correspondence, 1e-3)),
      cfg_(cfg),
      state_(init) {}

void Localizer::predict(const VehicleState& odometry, double dt) {
  state_ = ekf_predict(state_, odometry, dt, cfg_.process_noise());
}

bool Localizer::update_with_cloud(std::span<const Vec2> cloud) {
  if (cloud.empty() || map_index_.empty()) return false;
  const auto icp = icp_align(cloud, map_index_, pose(), cfg_.icp);
  if (!icp || icp->fitness < cfg_.min_fitness) {
    ++rejected_;
    return false;
  }
  const UpdateResult update =
      ekf_update(state_, icp->pose, cfg_.measurement_noise(icp->fitness), cfg_.gate_p_valid);
  if (!update.accepted) {
    ++rejected_;
    return false;
  }
  state_ = update.state;
  return true;
}

std::vector<TimedPose> localize_trajectory(const std::vector<LocalizationFrame>& frames,
                                           const ReferenceMap& map,
                                           const LocalizationConfig& cfg, const EkfState& init) {
  Localizer localizer(map, cfg, init);
  std::vector<TimedPose> estimates;
  estimates.reserve(frames.size());
  for (const LocalizationFrame& frame : frames) {
    if (frame.dt > 0.0) localizer.predict(frame.odometry, frame.dt);
    if (!frame.cloud.empty()) localizer.update_with_cloud(frame.cloud);
    estimates.push_back({frame.t, localizer.pose()});
  }
  return estimates;
}

}  // namespace radpc
