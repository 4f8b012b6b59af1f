#include <doctest.h>

#include <Eigen/Dense>

#include "radpc/localization/chi2.hpp"
#include "radpc/localization/localizer.hpp"
#include "test_helpers.hpp"

using namespace radpc;

namespace {

Eigen::Matrix3d diag3(double a, double b, double c) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

bool positive_definite(const Eigen::Matrix3d& m) {
  return Eigen::LLT<Eigen::Matrix3d>(m).info() == Eigen::Success;
}

ReferenceMap square_map(double half = 4.0, double spacing = 0.02) {
  ReferenceMap map;
  map.resolution = spacing;
  const int steps = static_cast<int>(2.0 * half / spacing);
  for (int i = 0; i <= steps; ++i) {
    const double u = -half + i * spacing;
    map.points.emplace_back(u, -half);
    map.points.emplace_back(u, half);
    map.points.emplace_back(-half, u);
    map.points.emplace_back(half, u);
  }
  return map;
}

/// Local scan of the square map walls from a given pose.
std::vector<Vec2> scan_of_map(const ReferenceMap& map, const Pose2D& pose, int stride = 7) {
  std::vector<Vec2> local;
  for (std::size_t i = 0; i < map.points.size(); i += stride) {
    local.push_back(pose.apply_inverse(map.points[i]));
  }
  return local;
}

}  // namespace

TEST_CASE("chi-squared quantile matches the textbook value") {
  CHECK(chi2_quantile(3, 0.95) == doctest::Approx(7.8147).epsilon(2e-4));
  CHECK(chi2_cdf(chi2_quantile(3, 0.5), 3) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(chi2_quantile(1, 0.95) == doctest::Approx(3.8415).epsilon(1e-3));
}

TEST_CASE("ekf_predict closed forms") {
  EkfState state;
  state.covariance = Eigen::Matrix3d::Identity() * 0.1;
  const Eigen::Matrix3d q = diag3(1e-4, 1e-4, 1e-5);

  // Stationary: the mean holds, the covariance grows by Q.
  VehicleState still;
  EkfState out = ekf_predict(state, still, 0.05, q);
  CHECK(out.mean.isZero());
  CHECK(out.covariance(0, 0) == doctest::Approx(0.1 + 1e-4));

  // Driving 1 m/s along +x for one second.
  VehicleState forward;
  forward.v = {1.0, 0.0};
  out = ekf_predict(state, forward, 1.0, q);
  CHECK(out.mean(0) == doctest::Approx(1.0));
  CHECK(out.mean(1) == doctest::Approx(0.0));

  // Quarter-turn yaw rate for one second.
  VehicleState spinning;
  spinning.yaw_rate = kPi / 2.0;
  out = ekf_predict(state, spinning, 1.0, q);
  CHECK(out.mean(2) == doctest::Approx(kPi / 2.0));

  CHECK_THROWS_AS(ekf_predict(state, still, 0.0, q), std::invalid_argument);
}

TEST_CASE("predict and update keep the covariance symmetric positive definite") {
  Rng rng(61);
  EkfState state;
  state.covariance = Eigen::Matrix3d::Identity() * 0.05;
  const Eigen::Matrix3d q = diag3(4e-4, 4e-4, 1e-4);
  const Eigen::Matrix3d r = diag3(2.5e-3, 2.5e-3, 4e-4);

  for (int step = 0; step < 500; ++step) {
    VehicleState u;
    u.v = {rng.uniform(-1, 1), 0.0};
    u.yaw_rate = rng.uniform(-1, 1);
    state = ekf_predict(state, u, 0.05, q);

    const Pose2D z{state.mean(0) + rng.normal(0.0, 0.05), state.mean(1) + rng.normal(0.0, 0.05),
                   state.mean(2) + rng.normal(0.0, 0.02)};
    const UpdateResult res = ekf_update(state, z, r, 0.95);
    if (res.accepted) state = res.state;

    CHECK((state.covariance - state.covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(positive_definite(state.covariance));
  }
}

TEST_CASE("chi2_gate accepts and rejects around the quantile") {
  const Eigen::Matrix3d s = Eigen::Matrix3d::Identity();

  CHECK(chi2_gate(Eigen::Vector3d::Zero(), s, 0.95).accept);

  // Mahalanobis squared of 7.80 passes, 7.82 does not.
  Eigen::Vector3d nu{std::sqrt(7.80), 0.0, 0.0};
  CHECK(chi2_gate(nu, s, 0.95).accept);
  nu(0) = std::sqrt(7.82);
  CHECK(!chi2_gate(nu, s, 0.95).accept);

  // A ten-sigma outlier on one axis.
  nu = {10.0, 0.0, 0.0};
  CHECK(!chi2_gate(nu, s, 0.95).accept);

  // Singular covariance rejects with the diagnostic flag.
  const GateResult res = chi2_gate(nu, Eigen::Matrix3d::Zero(), 0.95);
  CHECK(!res.accept);
  CHECK(res.singular);
}

TEST_CASE("gate is monotone in the validity probability") {
  Rng rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix3d a;
    a.setRandom();
    const Eigen::Matrix3d s = a * a.transpose() + 0.1 * Eigen::Matrix3d::Identity();
    const Eigen::Vector3d nu{rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1)};
    const bool at95 = chi2_gate(nu, s, 0.95).accept;
    if (at95) {
      CHECK(chi2_gate(nu, s, 0.99).accept);
      CHECK(chi2_gate(nu, s, 0.999).accept);
    }
  }
}

TEST_CASE("ekf_update examples") {
  EkfState state;
  state.covariance = Eigen::Matrix3d::Identity() * 0.01;
  const Eigen::Matrix3d r = diag3(0.01, 0.01, 0.01);

  // Measuring exactly the prediction leaves the mean alone and shrinks the
  // covariance.
  const UpdateResult same = ekf_update(state, Pose2D{}, r, 0.95);
  CHECK(same.accepted);
  CHECK(same.state.mean.isZero());
  CHECK(same.state.covariance(0, 0) < state.covariance(0, 0));

  // A gated outlier leaves the state untouched.
  const UpdateResult outlier = ekf_update(state, {5.0, 0.0, 0.0}, r, 0.95);
  CHECK(!outlier.accepted);
  CHECK(outlier.state.mean == state.mean);
  CHECK(outlier.state.covariance == state.covariance);

  // Scalar textbook case: prior variance 1, measurement variance 1 on x
  // gives the midpoint.
  EkfState wide;
  wide.covariance = Eigen::Matrix3d::Identity();
  const UpdateResult mid = ekf_update(wide, {1.0, 0.0, 0.0}, Eigen::Matrix3d::Identity(), 0.999);
  CHECK(mid.accepted);
  CHECK(mid.state.mean(0) == doctest::Approx(0.5));

  // Near-infinite measurement noise leaves the mean unchanged.
  EkfState prior;
  prior.covariance = Eigen::Matrix3d::Identity() * 0.01;
  prior.mean << 0.3, -0.2, 0.1;
  const UpdateResult weak =
      ekf_update(prior, {0.35, -0.15, 0.12}, diag3(1e12, 1e12, 1e12), 0.999999);
  CHECK(weak.accepted);
  CHECK(weak.state.mean(0) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(weak.state.mean(1) == doctest::Approx(-0.2).epsilon(1e-9));
}

TEST_CASE("heading innovation wraps") {
  EkfState state;
  state.mean << 0.0, 0.0, 179.0 * kPi / 180.0;
  state.covariance = Eigen::Matrix3d::Identity() * 0.01;
  const UpdateResult res =
      ekf_update(state, {0.0, 0.0, -179.0 * kPi / 180.0}, diag3(0.01, 0.01, 0.01), 0.95);
  CHECK(res.accepted);  // two degrees apart once wrapped
  CHECK(std::abs(wrap_angle(res.state.mean(2))) > 178.0 * kPi / 180.0);
}

TEST_CASE("icp recovers identity and exact rigid offsets") {
  // Isolated landmarks: every source point has one unambiguous partner, so
  // the constructed offset must come back exactly.
  Rng rng(71);
  ReferenceMap sparse;
  sparse.resolution = 0.0;
  for (int i = 0; i < 200; ++i) {
    sparse.points.emplace_back(rng.uniform(-6, 6), rng.uniform(-6, 6));
  }
  const Pose2D truth{0.1, 0.0, 0.0};
  std::vector<Vec2> source;
  for (const Vec2& p : sparse.points) {
    source.push_back(truth.apply_inverse(p));
  }

  // Starting at the truth: identity correction, full fitness.
  const auto exact = icp_align(source, sparse, truth);
  REQUIRE(exact.has_value());
  CHECK(exact->fitness == doctest::Approx(1.0));
  CHECK(exact->pose.x == doctest::Approx(truth.x).epsilon(1e-9));

  // Recover the translation from an identity init to within 1e-6.
  const auto result = icp_align(source, sparse, Pose2D{});
  REQUIRE(result.has_value());
  CHECK(result->pose.x == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(std::abs(result->pose.y) < 1e-6);
  CHECK(std::abs(result->pose.psi) < 1e-6);

  // Dense wall maps stall at the sampling scale instead: a decimeter of
  // initial error still comes back to a few millimeters.
  const ReferenceMap map = square_map();
  const Pose2D wall_truth{0.5, -0.3, 0.2};
  const std::vector<Vec2> scan = scan_of_map(map, wall_truth);
  const Pose2D init{wall_truth.x - 0.1, wall_truth.y + 0.05, wall_truth.psi + 0.03};
  const auto wall_fit = icp_align(scan, map, init);
  REQUIRE(wall_fit.has_value());
  CHECK((wall_fit->pose.translation() - wall_truth.translation()).norm() < 5e-3);
  CHECK(std::abs(wrap_angle(wall_fit->pose.psi - wall_truth.psi)) < 5e-3);
}

TEST_CASE("icp reports measurement-unavailable when nothing matches") {
  const ReferenceMap map = square_map();
  const std::vector<Vec2> source{{100.0, 100.0}, {101.0, 100.0}};
  CHECK(!icp_align(source, map, Pose2D{}));
  CHECK_THROWS_AS(icp_align(std::vector<Vec2>{}, map, Pose2D{}), std::invalid_argument);
}

TEST_CASE("icp is invariant under a rigid pre-transform of source and init") {
  const ReferenceMap map = square_map();
  const Pose2D truth{0.4, 0.2, -0.3};
  const std::vector<Vec2> source = scan_of_map(map, truth);
  const Pose2D init{truth.x + 0.05, truth.y - 0.04, truth.psi + 0.02};
  const auto base = icp_align(source, map, init);
  REQUIRE(base.has_value());

  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const Pose2D b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-3, 3)};
    std::vector<Vec2> moved;
    for (const Vec2& p : source) moved.push_back(b.apply_inverse(p));
    const auto result = icp_align(moved, map, compose(init, b));
    REQUIRE(result.has_value());
    const Pose2D recovered = compose(result->pose, invert(b));
    CHECK(recovered.x == doctest::Approx(base->pose.x).epsilon(1e-6));
    CHECK(recovered.y == doctest::Approx(base->pose.y).epsilon(1e-6));
    CHECK(wrap_angle(recovered.psi - base->pose.psi) == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("localizer with exact odometry and exact pose measurements") {
  const ReferenceMap map = square_map();
  LocalizationConfig cfg;

  EkfState state;
  state.mean << -1.0, 0.0, 0.0;
  state.covariance = Eigen::Matrix3d::Identity() * 1e-6;

  // Drive an arc with perfect odometry, measuring the true pose directly:
  // the filter tracks the truth to machine precision.
  Pose2D truth{-1.0, 0.0, 0.0};
  for (int step = 0; step < 200; ++step) {
    VehicleState u;
    u.v = {0.4, 0.0};
    u.yaw_rate = 0.3;
    truth = unicycle_step(truth, u.v, u.yaw_rate, 0.05);
    state = ekf_predict(state, u, 0.05, cfg.process_noise());
    const UpdateResult res = ekf_update(state, truth, cfg.measurement_noise(1.0), 0.95);
    REQUIRE(res.accepted);
    state = res.state;
  }
  CHECK(state.mean(0) == doctest::Approx(truth.x).epsilon(1e-9));
  CHECK(state.mean(1) == doctest::Approx(truth.y).epsilon(1e-9));

  // With measurements dropped entirely, prediction dead-reckons exactly on
  // noise-free odometry.
  EkfState dead;
  dead.mean << -1.0, 0.0, 0.0;
  Pose2D truth2{-1.0, 0.0, 0.0};
  for (int step = 0; step < 100; ++step) {
    VehicleState u;
    u.v = {0.4, 0.0};
    u.yaw_rate = 0.3;
    truth2 = unicycle_step(truth2, u.v, u.yaw_rate, 0.05);
    dead = ekf_predict(dead, u, 0.05, cfg.process_noise());
  }
  CHECK(dead.mean(0) == doctest::Approx(truth2.x).epsilon(1e-12));
  CHECK(dead.mean(1) == doctest::Approx(truth2.y).epsilon(1e-12));
}

TEST_CASE("localize_trajectory runs the predict-update chain") {
  const ReferenceMap map = square_map();
  LocalizationConfig cfg;

  std::vector<LocalizationFrame> frames;
  Pose2D truth{-1.5, 0.0, 0.0};
  std::vector<Pose2D> gt;
  for (int step = 0; step < 120; ++step) {
    VehicleState u;
    u.v = {0.5, 0.0};
    u.yaw_rate = 0.25;
    truth = unicycle_step(truth, u.v, u.yaw_rate, 0.05);
    LocalizationFrame frame;
    frame.t = 0.05 * (step + 1);
    frame.dt = 0.05;
    frame.odometry = u;
    frame.cloud = scan_of_map(map, truth, 11);
    frames.push_back(std::move(frame));
    gt.push_back(truth);
  }

  EkfState init;
  init.mean << -1.5, 0.0, 0.0;
  init.covariance = Eigen::Matrix3d::Identity() * 1e-4;
  const auto estimates = localize_trajectory(frames, map, cfg, init);
  REQUIRE(estimates.size() == frames.size());
  for (std::size_t i = 20; i < estimates.size(); ++i) {
    CHECK((estimates[i].pose.translation() - gt[i].translation()).norm() < 0.05);
  }
}
