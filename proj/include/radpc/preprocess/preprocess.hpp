#pragma once

#include <span>
#include <string>
#include <vector>

#include "radpc/core/types.hpp"

namespace radpc {

/// One sensor's detections for one time step, in the sensor frame.
struct RadarFrame {
  double timestamp = 0.0;  // s
  std::string sensor_id;
  std::vector<RadarDetection> detections;
};

/// Vehicle-frame detections of one time step after fusion and the
/// static/dynamic split. static_detections and dynamic_detections partition
/// the post-filter cloud.
struct FusedFrame {
  double timestamp = 0.0;
  std::vector<RadarDetection> static_detections;
  std::vector<RadarDetection> dynamic_detections;
  VehicleState vehicle;
};

/// All detections of one time step expressed in the vehicle body frame, in
/// frame order (callers list the front sensor first). dz is forced to 0.
/// When `origins` is non-null it receives the body-frame mount position of
/// the sensor that produced each detection, index-aligned with the result.
/// Throws ConfigError for a sensor_id missing from the extrinsics.
std::vector<RadarDetection> fuse_frames(const std::vector<RadarFrame>& frames,
                                        const SensorExtrinsics& extrinsics,
                                        std::vector<Vec2>* origins = nullptr);

/// Keeps detections with planar range >= min_range (boundary inclusive).
std::vector<RadarDetection> filter_min_range(const std::vector<RadarDetection>& detections,
                                             double min_range);

/// Radial velocity a static point at q would show: inner product of the unit
/// vector from the detection toward the sensor with the vehicle velocity.
/// q is relative to the originating sensor. Throws std::domain_error for q
/// at the origin.
double expected_static_velocity(const Vec2& q, const Vec2& v);

struct SplitResult {
  std::vector<RadarDetection> static_detections;
  std::vector<RadarDetection> dynamic_detections;
};

/// Partition into static and dynamic by the residual between the measured
/// radial velocity and the static-point prediction. `sensor_origins`, when
/// non-empty, gives each detection's sensor position in the body frame and
/// must be index-aligned; otherwise the vehicle center is used.
SplitResult split_dynamic_static(const std::vector<RadarDetection>& detections,
                                 const VehicleState& vehicle,
                                 double threshold,
                                 std::span<const Vec2> sensor_origins = {});

}  // namespace radpc
