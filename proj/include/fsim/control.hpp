#pragma once

#include <optional>

#include "fsim/estimation.hpp"
#include "fsim/geometry.hpp"
#include "fsim/perception.hpp"
#include "fsim/visibility.hpp"

// The two controllers and their arbitration: person following (approach to
// the 1.5 m standoff while centering the box) and frontalization visual
// servoing (low-rate outer loop placing setpoints on a shrinking orbit
// around the face, high-rate inner loop tracking them).
//
// Sign conventions, fixed once:
//  - positive yaw_rate turns the vehicle clockwise (to its right), matching
//    the pixel convention "box right of center = positive yaw error";
//  - positive frontalization error (subject's right half more visible, i.e.
//    the UAV sits at positive bearing) orbits the setpoint in the
//    negative-bearing direction.

namespace fsim {

struct AxisGains {
  double kp = 0.0;
  double kd = 0.0;
};

struct PDGains {
  AxisGains forward{0.5, 0.1};
  AxisGains lateral{0.5, 0.1};
  AxisGains yaw{1.0, 0.1};
  double max_speed = 1.0;     // m/s, per translational axis
  double max_yaw_rate = 1.0;  // rad/s
};

struct VelocityCommand {
  double vx = 0.0;        // body forward, m/s
  double vy = 0.0;        // body left, m/s
  double yaw_rate = 0.0;  // rad/s, positive = clockwise (turn right)
  double timestamp = 0.0;
};

struct Setpoint {
  Vec3 position{0.0, 0.0, 0.0};
  double yaw = 0.0;
  double created_at = 0.0;
};

enum class ControllerMode { Grounded, PersonFollowing, Frontalizing };

struct OrbitParams {
  double arc_gain = 1.2;          // rad of bearing correction per unit error
  double max_arc_step = 0.4;      // rad, per outer update
  double dead_zone_error = 0.03;
  double dead_zone_range_band = 0.1;  // m above standoff still counts as "there"
  double standoff = 1.5;          // m, never orbit closer than this
  double radial_contraction = 0.25;    // fraction of range shed per outer update
};

/// clamp(kp e + kd (e - e_prev) / dt, +-saturation). Throws on dt <= 0.
double pd_step(const AxisGains& gains, double error, double prev_error,
               double dt, double saturation);

/// Two-axis PD state for the person follower.
class PersonFollowController {
 public:
  PersonFollowController(PDGains gains, double standoff = 1.5,
                         double stale_after = 2.0)
      : gains_(gains), standoff_(standoff), stale_after_(stale_after) {}

  /// Zero (hold) command when the detection is older than the staleness
  /// window. Forward speed never crosses the standoff within one step.
  VelocityCommand step(const DetectionEvent& detection, const DepthModel& model,
                       const PinholeCamera& camera, double dt, double now);

  void reset();

 private:
  PDGains gains_;
  double standoff_;
  double stale_after_;
  std::optional<double> prev_depth_error_;
  std::optional<double> prev_yaw_error_;
};

/// Outer-loop setpoint law. The head position is estimated from the face
/// box direction and the estimated range; the setpoint sits on a circle of
/// radius max(standoff, (1 - contraction) * estimated_range) around it,
/// displaced along the orbit by -arc_gain * error in bearing. Inside the
/// dead zone (small error AND range within the standoff band) the setpoint
/// is the current station: no motion.
Setpoint frontalization_setpoint(const FrontalizationScore& score,
                                 const BoundingBox& face_box,
                                 const PinholeCamera& camera, const Pose& uav,
                                 double estimated_range,
                                 const OrbitParams& params, double now);

/// Inner-loop PD state (three axes) tracking the latest setpoint.
class InnerLoopController {
 public:
  explicit InnerLoopController(PDGains gains) : gains_(gains) {}

  VelocityCommand step(const Setpoint& setpoint, const Pose& odometry,
                       double dt, double now);

  void reset();

 private:
  PDGains gains_;
  std::optional<Vec3> prev_error_;  // (body x, body y, yaw)
};

/// Mode transitions: Grounded -> PersonFollowing on the first person event,
/// PersonFollowing -> Frontalizing on the first face event, Frontalizing ->
/// PersonFollowing when no face has been seen for face_dropout seconds.
ControllerMode mode_arbiter(ControllerMode current, bool person_event,
                            bool face_event, double now,
                            std::optional<double> last_face_time,
                            double face_dropout = 3.0);

}  // namespace fsim
