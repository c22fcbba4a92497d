// Omnidirectional planar base standing in for the quadruped, plus the
// proportional waypoint tracker driving its geometric center.

#pragma once

#include <random>

#include "vinenav/geometry.hpp"
#include "vinenav/planner.hpp"

namespace vinenav {

struct RobotConfig {
  double body_length_m{0.61};
  double max_speed_mps{0.4};
  double max_lateral_mps{0.2};
  double max_yaw_rate_rps{0.6};
  double actuation_noise_std{0.0};  // per-axis velocity noise
  double dt_s{0.05};
  double k_pos{1.0};
  double k_heading{2.0};

  void validate() const;
};

/// Body-frame velocity: x forward, y left.
struct VelocityCommand {
  double vx_body{0.0};
  double vy_body{0.0};
  double yaw_rate{0.0};

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

VelocityCommand clamp_command(VelocityCommand cmd, const RobotConfig& config);

VelocityCommand track(const Pose& pose, const Waypoint& waypoint, const RobotConfig& config);

/// One explicit Euler step. Noise is drawn on every call (three normals) so the
/// stream advances identically whether or not the std is zero.
Pose step_dynamics(const Pose& pose, const VelocityCommand& cmd, const RobotConfig& config,
                   std::mt19937_64& rng);

}  // namespace vinenav
