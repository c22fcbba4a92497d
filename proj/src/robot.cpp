#include "vinenav/robot.hpp"

#include <algorithm>
#include <cmath>

#include "vinenav/errors.hpp"

namespace vinenav {

void RobotConfig::validate() const {
  if (!(max_speed_mps > 0.0 && max_lateral_mps > 0.0 && max_yaw_rate_rps > 0.0)) {
    throw InvalidConfig("robot: velocity limits must be > 0");
  }
  if (!(dt_s > 0.0)) throw InvalidConfig("robot: dt_s must be > 0");
  if (!(actuation_noise_std >= 0.0)) throw InvalidConfig("robot: actuation_noise_std must be >= 0");
  if (!(k_pos > 0.0 && k_heading > 0.0)) throw InvalidConfig("robot: gains must be > 0");
  if (!(body_length_m > 0.0)) throw InvalidConfig("robot: body_length_m must be > 0");
}

VelocityCommand clamp_command(VelocityCommand cmd, const RobotConfig& config) {
  cmd.vx_body = std::clamp(cmd.vx_body, -config.max_speed_mps, config.max_speed_mps);
  cmd.vy_body = std::clamp(cmd.vy_body, -config.max_lateral_mps, config.max_lateral_mps);
  cmd.yaw_rate = std::clamp(cmd.yaw_rate, -config.max_yaw_rate_rps, config.max_yaw_rate_rps);
  return cmd;
}

VelocityCommand track(const Pose& pose, const Waypoint& waypoint, const RobotConfig& config) {
  const Vec2 body_err = rotate(waypoint.position - pose.position(), -pose.heading);
  const double heading_err = wrap_angle(waypoint.heading - pose.heading);
  return clamp_command({config.k_pos * body_err.x, config.k_pos * body_err.y, config.k_heading * heading_err},
                       config);
}

Pose step_dynamics(const Pose& pose, const VelocityCommand& cmd, const RobotConfig& config,
                   std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = config.actuation_noise_std;
  const double nx = gauss(rng) * sigma;
  const double ny = gauss(rng) * sigma;
  const double nth = gauss(rng) * sigma;

  const Vec2 v_world = rotate({cmd.vx_body + nx, cmd.vy_body + ny}, pose.heading);
  const double dt = config.dt_s;
  return {pose.x + v_world.x * dt, pose.y + v_world.y * dt,
          wrap_angle(pose.heading + (cmd.yaw_rate + nth) * dt)};
}

}  // namespace vinenav
