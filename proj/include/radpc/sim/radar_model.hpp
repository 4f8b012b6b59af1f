#pragma once

#include <string>

#include "radpc/core/rng.hpp"
#include "radpc/preprocess/preprocess.hpp"
#include "radpc/sim/world.hpp"

namespace radpc {

struct RadarSensorConfig {
  std::string id = "front";
  Pose2D mount;       // vehicle body frame
  double fov = kPi;   // total azimuth coverage, rad
};

struct RadarModelConfig {
  double range_resolution = 0.07;                   // m
  double max_range = 8.56;                          // m
  double azimuth_resolution = 14.3 * kPi / 180.0;   // rad, separability bin
  double azimuth_sigma = 1.0 * kPi / 180.0;         // rad, bearing estimate noise
  double range_sigma = 0.0;                         // m, range estimate noise
  double velocity_resolution = 0.01;                // m/s
  double fine_ray_step = 1.0 * kPi / 180.0;         // surface sampling step
  double dropout_prob = 0.10;                       // per detection
  double ghost_rate = 0.0;                          // expected ghosts per true detection
  double ghost_min_offset = 0.5;                    // m a ghost must sit beyond its reflector
};

/// Sparse detections for one sensor. Visible surfaces are sampled at the
/// fine ray step and merged into (azimuth bin, range bin) cells, so returns
/// closer than the azimuth resolution at the same range are not separable;
/// ranges quantize to the range bin. Each surviving return reports the
/// measured bearing of its surface point with Gaussian estimation noise,
/// the way angle estimation resolves a lone target far finer than the
/// separability limit. Static surfaces carry the quantized static-point
/// radial velocity; actors carry their true relative radial velocity.
/// Dropout and single-bounce mirror ghosts follow. Detections are in the
/// sensor frame, ordered by bin.
RadarFrame simulate_radar_frame(const World& world, const VehicleState& vehicle,
                                const RadarSensorConfig& sensor, const RadarModelConfig& cfg,
                                double timestamp, Rng& rng);

}  // namespace radpc
