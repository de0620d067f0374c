#include "fsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsim {

double pd_step(const AxisGains& gains, double error, double prev_error,
               double dt, double saturation) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("pd_step: dt must be positive");
  }
  const double raw = gains.kp * error + gains.kd * (error - prev_error) / dt;
  return std::clamp(raw, -saturation, saturation);
}

VelocityCommand PersonFollowController::step(const DetectionEvent& detection,
                                             const DepthModel& model,
                                             const PinholeCamera& camera,
                                             double dt, double now) {
  VelocityCommand cmd;
  cmd.timestamp = now;
  if (now - detection.timestamp > stale_after_) {
    reset();
    return cmd;  // hold
  }
  const double depth_error = estimate_depth(model, detection.box) - standoff_;
  const double yaw_error = pixel_offset_to_yaw_error(detection.box, camera);
  cmd.vx = pd_step(gains_.forward, depth_error,
                   prev_depth_error_.value_or(depth_error), dt, gains_.max_speed);
  // Never command forward motion that would cross the standoff in one step.
  if (depth_error > 0.0) {
    cmd.vx = std::min(cmd.vx, depth_error / dt);
  } else {
    cmd.vx = std::min(cmd.vx, 0.0);
  }
  cmd.yaw_rate = pd_step(gains_.yaw, yaw_error,
                         prev_yaw_error_.value_or(yaw_error), dt,
                         gains_.max_yaw_rate);
  prev_depth_error_ = depth_error;
  prev_yaw_error_ = yaw_error;
  return cmd;
}

void PersonFollowController::reset() {
  prev_depth_error_.reset();
  prev_yaw_error_.reset();
}

Setpoint frontalization_setpoint(const FrontalizationScore& score,
                                 const BoundingBox& face_box,
                                 const PinholeCamera& camera, const Pose& uav,
                                 double estimated_range,
                                 const OrbitParams& params, double now) {
  if (std::abs(score.error) < params.dead_zone_error &&
      estimated_range <= params.standoff + params.dead_zone_range_band) {
    return Setpoint{uav.position, uav.yaw, now};
  }

  // Head position estimate from the box direction (pixel offset is
  // clockwise-positive, so it subtracts from the world heading).
  const double head_angle = uav.yaw - pixel_offset_to_yaw_error(face_box, camera);
  const Vec2 head_xy = uav.position.head<2>() +
                       estimated_range * Vec2(std::cos(head_angle), std::sin(head_angle));

  // Station angle of the UAV around the head, advanced so that the bearing
  // moves by -arc_gain * error (a world-angle increase lowers the bearing).
  const Vec2 radial = uav.position.head<2>() - head_xy;
  const double station = std::atan2(radial.y(), radial.x());
  const double arc = std::clamp(params.arc_gain * score.error,
                                -params.max_arc_step, params.max_arc_step);
  const double target_station = station + arc;

  const double radius = std::max(
      params.standoff, (1.0 - params.radial_contraction) * estimated_range);

  Setpoint sp;
  sp.position = Vec3(head_xy.x() + radius * std::cos(target_station),
                     head_xy.y() + radius * std::sin(target_station),
                     uav.position.z());
  sp.yaw = normalize_angle(target_station + std::numbers::pi);  // face the head
  sp.created_at = now;
  return sp;
}

VelocityCommand InnerLoopController::step(const Setpoint& setpoint,
                                          const Pose& odometry, double dt,
                                          double now) {
  const Vec2 e_world = setpoint.position.head<2>() - odometry.position.head<2>();
  const double c = std::cos(odometry.yaw);
  const double s = std::sin(odometry.yaw);
  // Yaw error is clockwise-positive to match the command convention.
  const Vec3 error(c * e_world.x() + s * e_world.y(),
                   -s * e_world.x() + c * e_world.y(),
                   normalize_angle(odometry.yaw - setpoint.yaw));
  const Vec3 prev = prev_error_.value_or(error);

  VelocityCommand cmd;
  cmd.timestamp = now;
  cmd.vx = pd_step(gains_.forward, error.x(), prev.x(), dt, gains_.max_speed);
  cmd.vy = pd_step(gains_.lateral, error.y(), prev.y(), dt, gains_.max_speed);
  cmd.yaw_rate = pd_step(gains_.yaw, error.z(), prev.z(), dt, gains_.max_yaw_rate);
  prev_error_ = error;
  return cmd;
}

void InnerLoopController::reset() { prev_error_.reset(); }

ControllerMode mode_arbiter(ControllerMode current, bool person_event,
                            bool face_event, double now,
                            std::optional<double> last_face_time,
                            double face_dropout) {
  switch (current) {
    case ControllerMode::Grounded:
      return person_event ? ControllerMode::PersonFollowing : current;
    case ControllerMode::PersonFollowing:
      return face_event ? ControllerMode::Frontalizing : current;
    case ControllerMode::Frontalizing:
      if (face_event) return current;
      if (!last_face_time || now - *last_face_time > face_dropout) {
        return ControllerMode::PersonFollowing;
      }
      return current;
  }
  return current;
}

}  // namespace fsim
