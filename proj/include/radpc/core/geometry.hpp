#pragma once

#include <cmath>

#include <Eigen/Core>

namespace radpc {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Wrap an angle to (-pi, pi]. The boundary maps to +pi.
inline double wrap_angle(double a) {
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

/// Planar rigid-body pose. Heading is CCW-positive with zero along +x and
/// stays wrapped to (-pi, pi].
struct Pose2D {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double psi = 0.0;  // rad

  Pose2D() = default;
  Pose2D(double x_, double y_, double psi_) : x(x_), y(y_), psi(wrap_angle(psi_)) {}

  Vec2 translation() const { return {x, y}; }

  /// Local point -> parent frame.
  Vec2 apply(const Vec2& p) const {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return {x + c * p.x() - s * p.y(), y + s * p.x() + c * p.y()};
  }

  /// Parent-frame point -> local frame.
  Vec2 apply_inverse(const Vec2& p) const {
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    const double dx = p.x() - x;
    const double dy = p.y() - y;
    return {c * dx + s * dy, -s * dx + c * dy};
  }
};

/// Pose of frame b expressed through frame a.
inline Pose2D compose(const Pose2D& a, const Pose2D& b) {
  const Vec2 t = a.apply({b.x, b.y});
  return {t.x(), t.y(), a.psi + b.psi};
}

inline Pose2D invert(const Pose2D& p) {
  const double c = std::cos(p.psi);
  const double s = std::sin(p.psi);
  return {-(c * p.x + s * p.y), s * p.x - c * p.y, -p.psi};
}

/// Euler step of the planar unicycle: translate along the current heading,
/// then integrate the yaw rate. The simulator, odometry dead-reckoning and
/// the EKF prediction all share this one step so that noise-free paths agree
/// exactly.
inline Pose2D unicycle_step(const Pose2D& pose, const Vec2& v_body, double yaw_rate, double dt) {
  const double c = std::cos(pose.psi);
  const double s = std::sin(pose.psi);
  return {pose.x + dt * (c * v_body.x() - s * v_body.y()),
          pose.y + dt * (s * v_body.x() + c * v_body.y()),
          pose.psi + dt * yaw_rate};
}

}  // namespace radpc
