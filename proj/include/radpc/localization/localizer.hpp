#pragma once

#include <vector>

#include "radpc/localization/ekf.hpp"
#include "radpc/localization/icp.hpp"

namespace radpc {

struct LocalizationConfig {
  double process_sigma_xy = 0.02;   // m per predict step
  double process_sigma_psi = 0.01;  // rad per predict step
  double meas_sigma_xy = 0.05;      // m, base ICP measurement noise
  double meas_sigma_psi = 0.02;     // rad
  double gate_p_valid = 0.95;
  double min_fitness = 0.2;  // ICP results below this skip the update
  IcpConfig icp;

  Eigen::Matrix3d process_noise() const;
  Eigen::Matrix3d measurement_noise(double fitness) const;
};

/// Radar-inertial pose filter against a pre-mapped environment: unicycle
/// prediction from odometry, ICP pose measurements gated by the chi-squared
/// test. Single writer; predict and update are serialized by the caller.
class Localizer {
 public:
  Localizer(ReferenceMap map, const LocalizationConfig& cfg, const EkfState& init);

  void predict(const VehicleState& odometry, double dt);

  /// Runs ICP from the current mean and applies a gated EKF update. Returns
  /// true when a measurement was accepted. Empty clouds, correspondence
  /// failures and low-fitness matches leave the state unchanged.
  bool update_with_cloud(std::span<const Vec2> cloud);

  const EkfState& state() const { return state_; }
  Pose2D pose() const { return {state_.mean(0), state_.mean(1), state_.mean(2)}; }
  int rejected_updates() const { return rejected_; }

 private:
  ReferenceMap map_;
  PointGrid2D map_index_;
  LocalizationConfig cfg_;
  EkfState state_;
  int rejected_ = 0;
};

struct TimedPose {
  double t = 0.0;
  Pose2D pose;
};

/// One pipeline frame as consumed by the localizer.
struct LocalizationFrame {
  double t = 0.0;
  double dt = 0.0;           // s since the previous frame
  VehicleState odometry;     // measured body velocity and yaw rate
  std::vector<Vec2> cloud;   // vehicle-frame points for scan matching
};

/// Predict at every frame, update whenever the frame carries a cloud;
/// returns the timestamped pose estimates.
std::vector<TimedPose> localize_trajectory(const std::vector<LocalizationFrame>& frames,
                                           const ReferenceMap& map,
                                           const LocalizationConfig& cfg, const EkfState& init);

}  // namespace radpc
