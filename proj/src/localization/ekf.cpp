#include "radpc/localization/ekf.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "radpc/localization/chi2.hpp"

namespace radpc {

namespace {

Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

EkfState ekf_predict(const EkfState& state, const VehicleState& u, double dt,
                     const Eigen::Matrix3d& process_noise) {
  if (dt <= 0.0) throw std::invalid_argument("ekf_predict requires dt > 0");

  const double psi = state.mean(2);
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  const double vx = u.v.x();
  const double vy = u.v.y();

  const Pose2D next = unicycle_step({state.mean(0), state.mean(1), psi}, u.v, u.yaw_rate, dt);

  Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
  jac(0, 2) = dt * (-s * vx - c * vy);
  jac(1, 2) = dt * (c * vx - s * vy);

  EkfState out;
  out.mean << next.x, next.y, next.psi;
  out.covariance = symmetrize(jac * state.covariance * jac.transpose() + process_noise);
  return out;
}

GateResult chi2_gate(const Eigen::Vector3d& innovation, const Eigen::Matrix3d& innovation_cov,
                     double p_valid) {
  GateResult result;
  const Eigen::LLT<Eigen::Matrix3d> llt(innovation_cov);
  if (llt.info() != Eigen::Success) {
    result.singular = true;
    return result;
  }
  result.mahalanobis_sq = innovation.dot(llt.solve(innovation));
  result.accept = result.mahalanobis_sq <= chi2_quantile(3, p_valid);
  return result;
}

UpdateResult ekf_update(const EkfState& state, const Pose2D& measurement,
                        const Eigen::Matrix3d& measurement_noise, double gate_p_valid) {
  UpdateResult result;
  result.state = state;

  Eigen::Vector3d innovation;
  innovation << measurement.x - state.mean(0), measurement.y - state.mean(1),
      wrap_angle(measurement.psi - state.mean(2));

  const Eigen::Matrix3d innovation_cov = state.covariance + measurement_noise;
  const GateResult gate = chi2_gate(innovation, innovation_cov, gate_p_valid);
  result.mahalanobis_sq = gate.mahalanobis_sq;
  if (!gate.accept) return result;

  const Eigen::Matrix3d gain = state.covariance * innovation_cov.inverse();
  Eigen::Vector3d mean = state.mean + gain * innovation;
  mean(2) = wrap_angle(mean(2));

  // Joseph form keeps the covariance positive definite.
  const Eigen::Matrix3d ikh = Eigen::Matrix3d::Identity() - gain;
  const Eigen::Matrix3d covariance =
      symmetrize(ikh * state.covariance * ikh.transpose() + gain * measurement_noise * gain.transpose());

  result.state.mean = mean;
  result.state.covariance = covariance;
  result.accepted = true;
  return result;
}

}  // namespace radpc
