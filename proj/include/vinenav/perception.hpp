// Synthetic RGB-D trunk detector. Stands in for segmentation + aligned depth:
// it emits world-frame trunk positions with range/bearing gating, Gaussian
// position noise, misses, and uniformly placed false positives.

#pragma once

#include <random>
#include <vector>

#include "vinenav/geometry.hpp"
#include "vinenav/world.hpp"

namespace vinenav {

struct CameraConfig {
  double fov_rad{1.0};
  double max_range_m{4.0};
  double min_range_m{0.3};
  double position_noise_std_m{0.02};
  double miss_prob{0.0};
  double false_positive_rate{0.0};  // expected spurious detections per frame

  void validate() const;
};

struct TrunkDetection {
  Vec2 position{};
  int frame_index{0};
  double range_m{0.0};
  /// Ground-truth trunk id, or -1 for a false positive. Diagnostics only;
  /// the navigation stack never reads it.
  int source_trunk_id{-1};

  friend bool operator==(const TrunkDetection&, const TrunkDetection&) = default;
};

/// Polar point in the sensor frame (x forward, y left).
struct SensorPoint {
  double range{0.0};
  double bearing{0.0};
};

/// Rigid transform of a sensor-frame point into the world. Throws InvalidInput
/// on non-finite input or non-positive range.
Vec2 sensor_to_world(SensorPoint p, const Pose& pose);

/// Inverse of sensor_to_world.
SensorPoint world_to_sensor(Vec2 p, const Pose& pose);

std::vector<TrunkDetection> sense(const World& world, const Pose& pose, const CameraConfig& cam,
                                  std::mt19937_64& rng, int frame_index);

}  // namespace vinenav
