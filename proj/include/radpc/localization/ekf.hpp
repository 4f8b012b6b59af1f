#pragma once

#include <Eigen/Core>

#include "radpc/core/types.hpp"

namespace radpc {

/// Planar pose filter state. The covariance stays symmetric positive
/// definite across predict and update.
struct EkfState {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();  // x, y, psi
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();
};

/// Unicycle prediction: mean propagated with the shared motion step, the
/// covariance through the model Jacobian plus Q. dt must be positive.
EkfState ekf_predict(const EkfState& state, const VehicleState& u, double dt,
                     const Eigen::Matrix3d& process_noise);

struct GateResult {
  bool accept = false;
  double mahalanobis_sq = 0.0;
  bool singular = false;  // S was not invertible; measurement rejected
};

/// Chi-squared innovation gate at probability p_valid (dof = 3).
GateResult chi2_gate(const Eigen::Vector3d& innovation, const Eigen::Matrix3d& innovation_cov,
                     double p_valid);

struct UpdateResult {
  EkfState state;
  bool accepted = false;
  double mahalanobis_sq = 0.0;
};

/// Identity-measurement EKF update on (x, y, psi) with wrapped heading
/// innovation, gated by chi2_gate. A rejected measurement returns the input
/// state unchanged.
UpdateResult ekf_update(const EkfState& state, const Pose2D& measurement,
                        const Eigen::Matrix3d& measurement_noise, double gate_p_valid);

}  // namespace radpc
