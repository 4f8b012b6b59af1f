#include <doctest.h>

#include "radpc/core/rng.hpp"
#include "radpc/preprocess/occupancy_grid.hpp"

using namespace radpc;

namespace {

std::vector<RadarDetection> at(std::initializer_list<Vec2> points) {
  std::vector<RadarDetection> out;
  for (const Vec2& p : points) out.push_back({p.x(), p.y(), 0.0, 0.0});
  return out;
}

}  // namespace

TEST_CASE("grid dimensions at defaults") {
  OccupancyGrid grid;
  CHECK(grid.cells_per_axis() == 50);
  CHECK(grid.extract_nodes().empty());
}

TEST_CASE("grid rejects bad parameters") {
  OccupancyGrid::Params p;
  p.resolution = 0.0;
  CHECK_THROWS_AS(OccupancyGrid{p}, std::invalid_argument);
  p = {};
  p.window = 0;
  CHECK_THROWS_AS(OccupancyGrid{p}, std::invalid_argument);
}

TEST_CASE("p_det counts hits over the window") {
  OccupancyGrid grid;
  const Pose2D still{};

  // 20 consecutive frames hitting one cell saturate it.
  for (int i = 0; i < 20; ++i) {
    grid.update(at({{1.05, -0.55}}), still);
  }
  auto nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].p_det == doctest::Approx(1.0));

  // 20 empty frames evict everything.
  for (int i = 0; i < 20; ++i) {
    grid.update({}, still);
  }
  CHECK(grid.extract_nodes().empty());
}

TEST_CASE("five hits in twenty frames gives a quarter") {
  OccupancyGrid grid;
  const Pose2D still{};
  for (int i = 0; i < 20; ++i) {
    if (i < 5) {
      grid.update(at({{2.05, 2.05}}), still);
    } else {
      grid.update({}, still);
    }
  }
  const auto nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].p_det == doctest::Approx(0.25));
}

TEST_CASE("multiple detections in one cell count once per frame") {
  OccupancyGrid grid;
  grid.update(at({{1.01, 1.01}, {1.02, 1.02}, {1.05, 1.08}}), Pose2D{});
  const auto nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].p_det == doctest::Approx(1.0 / 20.0));
}

TEST_CASE("node position is the cell center") {
  // Shift the extent so that (1.0, -0.6) is a representable cell center.
  OccupancyGrid::Params p;
  p.extent_min = -5.1;
  p.extent_max = 4.9;
  OccupancyGrid grid(p);
  grid.update(at({{0.95, -0.52}}), Pose2D{});
  const auto nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].x == doctest::Approx(1.0));
  CHECK(nodes[0].y == doctest::Approx(-0.6));
  CHECK(nodes[0].z == 0.0);

  // The generic rule on the default grid: a detection lands in the cell
  // whose center is the nearest odd multiple of 0.1.
  OccupancyGrid def;
  def.update(at({{1.03, -0.57}}), Pose2D{});
  const auto dn = def.extract_nodes();
  REQUIRE(dn.size() == 1);
  CHECK(dn[0].x == doctest::Approx(1.1));
  CHECK(dn[0].y == doctest::Approx(-0.5));
}

TEST_CASE("fully occupied grid yields one node per cell") {
  OccupancyGrid grid;
  std::vector<RadarDetection> everywhere;
  for (int ix = 0; ix < 50; ++ix) {
    for (int iy = 0; iy < 50; ++iy) {
      everywhere.push_back({-5.0 + (ix + 0.5) * 0.2, -5.0 + (iy + 0.5) * 0.2, 0.0, 0.0});
    }
  }
  grid.update(everywhere, Pose2D{});
  CHECK(grid.extract_nodes().size() == 2500);
}

TEST_CASE("detections outside the extent are ignored") {
  OccupancyGrid grid;
  grid.update(at({{7.0, 0.0}, {-5.2, 1.0}, {0.0, 5.0}}), Pose2D{});
  CHECK(grid.extract_nodes().empty());  // 5.0 sits on the open upper boundary
}

TEST_CASE("pose alignment re-expresses the window against the newest pose") {
  OccupancyGrid grid;
  // World point at (2.07, 0.03) seen from the origin.
  grid.update(at({{2.07, 0.03}}), Pose2D{});
  // Vehicle moves to (1, 0): the same world point is now ~1.07 m ahead.
  grid.update({}, {1.0, 0.0, 0.0});
  auto nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].x == doctest::Approx(1.1));
  CHECK(nodes[0].y == doctest::Approx(0.1));

  // Rotating in place swings the stored point around the vehicle.
  grid.update({}, {1.0, 0.0, kPi / 2.0});
  nodes = grid.extract_nodes();
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].x == doctest::Approx(0.1));
  CHECK(nodes[0].y == doctest::Approx(-1.1));
}

TEST_CASE("sliding window replay equivalence") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    OccupancyGrid::Params params;
    params.window = 5 + static_cast<int>(rng.uniform_index(10));
    OccupancyGrid incremental(params);

    const int total = params.window + 10 + static_cast<int>(rng.uniform_index(20));
    std::vector<std::vector<RadarDetection>> frames;
    std::vector<Pose2D> poses;
    for (int f = 0; f < total; ++f) {
      std::vector<RadarDetection> dets;
      const int n = static_cast<int>(rng.uniform_index(25));
      for (int i = 0; i < n; ++i) {
        dets.push_back({rng.uniform(-4.5, 4.5), rng.uniform(-4.5, 4.5), 0.0, 0.0});
      }
      frames.push_back(std::move(dets));
      poses.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-3, 3)});
      incremental.update(frames.back(), poses.back());
    }

    // Replaying only the last `window` frames from scratch produces the
    // identical raster.
    OccupancyGrid replay(params);
    for (int f = total - params.window; f < total; ++f) {
      replay.update(frames[f], poses[f]);
    }
    const auto a = incremental.extract_nodes();
    const auto b = replay.extract_nodes();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].y == b[i].y);
      CHECK(a[i].p_det == b[i].p_det);
    }
  }
}

TEST_CASE("p_det values are multiples of one over window") {
  Rng rng(33);
  OccupancyGrid grid;
  for (int f = 0; f < 40; ++f) {
    std::vector<RadarDetection> dets;
    for (int i = 0; i < 30; ++i) {
      dets.push_back({rng.uniform(-4.9, 4.9), rng.uniform(-4.9, 4.9), 0.0, 0.0});
    }
    grid.update(dets, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-3, 3)});
    for (const GridNode& node : grid.extract_nodes()) {
      const double scaled = node.p_det * 20.0;
      CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
      CHECK(node.p_det > 0.0);
      CHECK(node.p_det <= 1.0);
    }
  }
}
