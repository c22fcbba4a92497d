#include "vinenav/perception.hpp"

#include <algorithm>
#include <cmath>

#include "vinenav/errors.hpp"

namespace vinenav {

void CameraConfig::validate() const {
  if (!(fov_rad > 0.0 && fov_rad < kTwoPi)) throw InvalidConfig("camera: fov_rad must be in (0, 2pi)");
  if (!(min_range_m >= 0.0 && min_range_m < max_range_m)) {
    throw InvalidConfig("camera: need 0 <= min_range_m < max_range_m");
  }
  if (!(miss_prob >= 0.0 && miss_prob <= 1.0)) throw InvalidConfig("camera: miss_prob must be in [0, 1]");
  if (!(position_noise_std_m >= 0.0)) throw InvalidConfig("camera: position_noise_std_m must be >= 0");
  if (!(false_positive_rate >= 0.0) || !std::isfinite(false_positive_rate)) {
    throw InvalidConfig("camera: false_positive_rate must be >= 0");
  }
}

Vec2 sensor_to_world(SensorPoint p, const Pose& pose) {
  if (!pose.finite() || !std::isfinite(p.range) || !std::isfinite(p.bearing)) {
    throw InvalidInput("sensor_to_world: non-finite input");
  }
  if (!(p.range > 0.0)) throw InvalidInput("sensor_to_world: range must be > 0");
  const Vec2 local{p.range * std::cos(p.bearing), p.range * std::sin(p.bearing)};
  return pose.position() + rotate(local, pose.heading);
}

SensorPoint world_to_sensor(Vec2 p, const Pose& pose) {
  const Vec2 local = rotate(p - pose.position(), -pose.heading);
  return {norm(local), std::atan2(local.y, local.x)};
}

std::vector<TrunkDetection> sense(const World& world, const Pose& pose, const CameraConfig& cam,
                                  std::mt19937_64& rng, int frame_index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double half_fov = 0.5 * cam.fov_rad;

  std::vector<TrunkDetection> out;
  for (const auto& trunk : world.trunks) {
    const SensorPoint sp = world_to_sensor(trunk.position, pose);
    if (sp.range < cam.min_range_m || sp.range > cam.max_range_m) continue;
    if (std::abs(sp.bearing) > half_fov) continue;
    if (unit(rng) < cam.miss_prob) continue;
    const double nx = gauss(rng) * cam.position_noise_std_m;
    const double ny = gauss(rng) * cam.position_noise_std_m;
    out.push_back({trunk.position + Vec2{nx, ny}, frame_index, sp.range, trunk.id});
  }

  if (cam.false_positive_rate > 0.0) {
    std::poisson_distribution<int> count_dist(cam.false_positive_rate);
    const int n_false = count_dist(rng);
    const double r2_lo = cam.min_range_m * cam.min_range_m;
    const double r2_hi = cam.max_range_m * cam.max_range_m;
    for (int i = 0; i < n_false; ++i) {
      // Uniform by area over the annular wedge.
      const double r = std::sqrt(r2_lo + unit(rng) * (r2_hi - r2_lo));
      const double b = -half_fov + unit(rng) * cam.fov_rad;
      const double range = std::max(r, cam.min_range_m > 0.0 ? cam.min_range_m : 1e-9);
      out.push_back({sensor_to_world({range, b}, pose), frame_index, range, -1});
    }
  }
  return out;
}

}  // namespace vinenav
