#include "radpc/preprocess/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radpc {

OccupancyGrid::OccupancyGrid() : OccupancyGrid(Params()) {}

OccupancyGrid::OccupancyGrid(const Params& params) : params_(params) {
  if (params_.resolution <= 0.0) throw std::invalid_argument("grid resolution must be positive");
  if (params_.extent_max <= params_.extent_min) throw std::invalid_argument("grid extent is empty");
  if (params_.window < 1) throw std::invalid_argument("grid window must be at least one frame");
  const double span = params_.extent_max - params_.extent_min;
  n_ = static_cast<int>(std::ceil(span / params_.resolution - 1e-9));
  hits_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

void OccupancyGrid::update(const std::vector<RadarDetection>& static_detections, const Pose2D& pose) {
  std::vector<Vec2> world;
  world.reserve(static_detections.size());
  for (const RadarDetection& d : static_detections) {
    world.push_back(pose.apply(d.position()));
  }
  frames_.push_back(std::move(world));
  while (static_cast<int>(frames_.size()) > params_.window) {
    frames_.pop_front();
  }
  ref_pose_ = pose;
  rasterize();
}

void OccupancyGrid::rasterize() {
  std::fill(hits_.begin(), hits_.end(), 0);
  std::vector<int> cells;
  for (const std::vector<Vec2>& frame : frames_) {
    cells.clear();
    for (const Vec2& w : frame) {
      const Vec2 local = ref_pose_.apply_inverse(w);
      const int ix = static_cast<int>(std::floor((local.x() - params_.extent_min) / params_.resolution));
      const int iy = static_cast<int>(std::floor((local.y() - params_.extent_min) / params_.resolution));
      if (ix < 0 || ix >= n_ || iy < 0 || iy >= n_) continue;
      cells.push_back(iy * n_ + ix);
    }
    // A cell counts once per frame no matter how many detections land in it.
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (int c : cells) ++hits_[c];
  }
}

double OccupancyGrid::p_det(int ix, int iy) const {
  if (ix < 0 || ix >= n_ || iy < 0 || iy >= n_) throw std::out_of_range("grid cell index");
  return static_cast<double>(hits_[static_cast<std::size_t>(iy) * n_ + ix]) / params_.window;
}

std::vector<GridNode> OccupancyGrid::extract_nodes() const {
  std::vector<GridNode> nodes;
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      const int h = hits_[static_cast<std::size_t>(iy) * n_ + ix];
      if (h == 0) continue;
      GridNode node;
      node.x = params_.extent_min + (ix + 0.5) * params_.resolution;
      node.y = params_.extent_min + (iy + 0.5) * params_.resolution;
      node.z = 0.0;
      node.p_det = static_cast<double>(h) / params_.window;
      nodes.push_back(node);
    }
  }
  return nodes;
}

void OccupancyGrid::reset() {
  frames_.clear();
  ref_pose_ = Pose2D{};
  std::fill(hits_.begin(), hits_.end(), 0);
}

}  // namespace radpc
