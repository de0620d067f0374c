#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsim/control.hpp"
#include "fsim/estimation.hpp"
#include "fsim/geometry.hpp"
#include "fsim/perception.hpp"
#include "fsim/verification.hpp"
#include "fsim/visibility.hpp"

// Deterministic multi-rate simulation: fixed-step integration of a
// first-order vehicle, sensors ticking on their own clocks (tie order:
// odometry, images, pedestrian, tracker, face), controller arbitration, and
// full run logging. run() is a pure function of the ScenarioConfig.

namespace fsim {

struct VehicleModel {
  double tau = 0.3;  // seconds; first-order velocity response
};

struct ScenarioConfig {
  HeadPose person;
  Pose uav_start{Vec3(-4.0, 0.0, 1.6), 0.0};
  SensorRates rates;
  NoiseModel noise;
  PDGains gains;
  OrbitParams orbit;
  EmbeddingParams embedding;
  PinholeCamera camera;
  VehicleModel vehicle;
  DepthModelKind depth_model = DepthModelKind::Linear;
  std::vector<DepthSample> calibration;  // empty = auto-calibrate (1..6 m)
  double duration = 60.0;  // seconds
  double dt = 0.02;        // seconds; must satisfy dt <= 1 / (2 max rate)
  double face_dropout = 3.0;
  int raster_resolution = 64;
  std::uint64_t seed = 0;
};

/// Thrown by validation; message carries one line per offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError listing every invalid field.
void validate(const ScenarioConfig& config);

struct PoseSample {
  double t;
  Vec3 position;
  double yaw;
};

struct CommandSample {
  double t;
  ControllerMode mode;
  VelocityCommand command;
  double error;  // latest frontalization error, NaN before the first score
  Setpoint setpoint;
};

struct EventSample {
  double t;
  DetectionEvent event;
  double error;  // face events only, NaN otherwise
};

struct ModeSample {
  double t;
  ControllerMode mode;
};

struct TickCounts {
  int odometry = 0;
  int images = 0;
  int pedestrian = 0;
  int tracker = 0;
  int face = 0;
};

struct RunLog {
  std::vector<PoseSample> poses;
  std::vector<CommandSample> commands;
  std::vector<EventSample> events;
  std::vector<FrontalizationScore> scores;
  std::vector<SimilarityRecord> similarities;
  std::vector<ModeSample> mode_transitions;
  TickCounts ticks;
  DepthModel depth_model;
};

/// One integration step of the first-order vehicle. velocity is
/// (vx body, vy body, yaw_rate); yaw_rate is clockwise-positive.
void integrate_vehicle(Pose& pose, Vec3& velocity, const VelocityCommand& command,
                       double dt, double tau);

RunLog run(const ScenarioConfig& config);

struct SweepCell {
  double bearing;  // radians
  double range;    // meters
  int detections;
  double mean_error;     // NaN when no detection
  double mean_accuracy;  // NaN when no detection
};

/// Static UAV placements on a (bearing, range) polar grid around the person;
/// mean frontalization score over N face-detector samples per cell.
std::vector<SweepCell> sweep(const ScenarioConfig& config,
                             const std::vector<double>& bearings,
                             const std::vector<double>& ranges,
                             int samples_per_cell = 5);

struct FieldCell {
  double bearing;
  double range;
  bool detecting;
  bool dead_zone;
  double error;  // NaN when not detecting
  VelocityCommand command;
};

/// Open-loop controller evaluation on a polar grid with a fresh noiseless
/// face detection per cell (the quiver-plot data).
std::vector<FieldCell> velocity_field(const ScenarioConfig& config,
                                      const std::vector<double>& bearings,
                                      const std::vector<double>& ranges);

/// A UAV pose on the orbit circle: at the given bearing/range, camera
/// height matched to the head, yaw facing the head.
Pose pose_on_circle(const HeadPose& head, double bearing, double range);

const char* to_string(ControllerMode mode);

}  // namespace fsim
