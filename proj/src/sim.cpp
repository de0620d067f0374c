#include "fsim/sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTickEps = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sensor rng stream ids; fixed so runs are reproducible field by field.
enum StreamId : std::uint64_t {
  kPedestrianStream = 1,
  kTrackerStream = 2,
  kFaceStream = 3,
  kEmbeddingStream = 4,
  kSweepStreamBase = 100,
};

std::vector<DepthSample> synthetic_calibration(const ScenarioConfig& config) {
  // Pinhole-exact (height, distance) pairs over the 1-6 m working band.
  std::vector<DepthSample> samples;
  for (double d = 1.0; d <= 6.0 + 1e-9; d += 0.25) {
    samples.emplace_back(config.camera.focal_px * config.person.person_height / d, d);
  }
  return samples;
}

double face_range_estimate(const ScenarioConfig& config, const BoundingBox& face_box) {
  // Pinhole inverse of the face box height; the person-box depth model is
  // too coarse near the standoff to place the orbit center safely.
  return config.camera.focal_px * config.person.head_height /
         std::max(face_box.height, 1.0);
}

struct TickClock {
  double rate;
  long next = 1;
  bool due(double t) const { return double(next) / rate <= t + kTickEps; }
  void advance() { ++next; }
};

}  // namespace

const char* to_string(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::Grounded: return "grounded";
    case ControllerMode::PersonFollowing: return "person_following";
    case ControllerMode::Frontalizing: return "frontalizing";
  }
  return "unknown";
}

void validate(const ScenarioConfig& config) {
  std::ostringstream bad;
  auto require = [&](bool ok, const char* what) {
    if (!ok) bad << "  " << what << "\n";
  };
  require(config.person.head_height > 0.15 && config.person.head_height < 0.35,
          "person.head_height must be in (0.15, 0.35) m");
  require(config.person.person_height > 1.2 && config.person.person_height < 2.2,
          "person.person_height must be in (1.2, 2.2) m");
  require(config.camera.focal_px > 0.0, "camera.focal_px must be positive");
  require(config.camera.width_px > 0 && config.camera.height_px > 0,
          "camera resolution must be positive");
  require(config.rates.onboard_images_hz > 0.0 && config.rates.odometry_hz > 0.0 &&
              config.rates.pedestrian_hz > 0.0 && config.rates.tracker_hz > 0.0 &&
              config.rates.face_hz > 0.0,
          "all sensor rates must be positive");
  require(config.rates.pedestrian_hz <= config.rates.tracker_hz,
          "rates.pedestrian_hz must not exceed rates.tracker_hz");
  require(config.duration > 0.0, "sim.duration must be positive");
  const double max_rate =
      std::max({config.rates.onboard_images_hz, config.rates.odometry_hz,
                config.rates.pedestrian_hz, config.rates.tracker_hz,
                config.rates.face_hz});
  require(config.dt > 0.0 && config.dt <= 1.0 / (2.0 * max_rate),
          "sim.dt must be positive and at most 1 / (2 max rate)");
  require(config.vehicle.tau > 0.0, "vehicle.tau must be positive");
  require(config.raster_resolution >= 8, "sim.raster_resolution must be >= 8");
  require(config.noise.center_sigma_px >= 0.0 &&
              config.noise.height_sigma_frac >= 0.0,
          "noise sigmas must be nonnegative");
  require(config.noise.false_negative_prob >= 0.0 &&
              config.noise.false_negative_prob <= 1.0,
          "noise.false_negative_prob must be in [0, 1]");
  require(config.gains.max_speed > 0.0 && config.gains.max_yaw_rate > 0.0,
          "gains saturations must be positive");
  require(config.gains.forward.kp >= 0.0 && config.gains.forward.kd >= 0.0 &&
              config.gains.lateral.kp >= 0.0 && config.gains.lateral.kd >= 0.0 &&
              config.gains.yaw.kp >= 0.0 && config.gains.yaw.kd >= 0.0,
          "gains must be nonnegative");
  require(config.orbit.standoff > 0.0, "orbit.standoff must be positive");
  require(config.embedding.dim >= 2, "embedding.dim must be >= 2");
  const std::string msg = bad.str();
  if (!msg.empty()) {
    throw ConfigError("invalid scenario config:\n" + msg);
  }
}

void integrate_vehicle(Pose& pose, Vec3& velocity, const VelocityCommand& command,
                       double dt, double tau) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("integrate_vehicle: dt must be positive");
  }
  const double alpha = tau > 1e-9 ? 1.0 - std::exp(-dt / tau) : 1.0;
  velocity.x() += alpha * (command.vx - velocity.x());
  velocity.y() += alpha * (command.vy - velocity.y());
  velocity.z() += alpha * (command.yaw_rate - velocity.z());

  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  pose.position.x() += dt * (c * velocity.x() - s * velocity.y());
  pose.position.y() += dt * (s * velocity.x() + c * velocity.y());
  // Clockwise-positive yaw rate.
  pose.yaw = normalize_angle(pose.yaw - dt * velocity.z());
}

RunLog run(const ScenarioConfig& config) {
  validate(config);

  RunLog log;
  const auto calibration =
      config.calibration.empty() ? synthetic_calibration(config) : config.calibration;
  log.depth_model = fit_depth_model(calibration, config.depth_model);

  const ReferenceFaceSurface surface = ReferenceFaceSurface::ellipsoid();
  NoiseModel noise = config.noise;
  noise.seed = config.seed;
  PedestrianDetector pedestrian(noise, kPedestrianStream);
  BoxTracker tracker(noise, kTrackerStream);
  FaceDetector face(noise, kFaceStream, surface, config.raster_resolution);
  Rng embedding_rng(config.seed, kEmbeddingStream);
  const Embedding registered = reference_embedding(config.embedding);

  PersonFollowController follower(config.gains, config.orbit.standoff);
  InnerLoopController inner(config.gains);

  Pose pose = config.uav_start;
  Vec3 velocity = Vec3::Zero();
  VelocityCommand command;
  ControllerMode mode = ControllerMode::Grounded;
  std::optional<DetectionEvent> last_person;
  std::optional<double> last_face_time;
  std::optional<Setpoint> setpoint;
  double latest_error = kNaN;

  log.mode_transitions.push_back({0.0, mode});
  log.poses.push_back({0.0, pose.position, pose.yaw});

  TickClock odometry_clock{config.rates.odometry_hz};
  TickClock images_clock{config.rates.onboard_images_hz};
  TickClock pedestrian_clock{config.rates.pedestrian_hz};
  TickClock tracker_clock{config.rates.tracker_hz};
  TickClock face_clock{config.rates.face_hz};

  const long steps = std::lround(config.duration / config.dt);
  for (long k = 1; k <= steps; ++k) {
    const double t = double(k) * config.dt;
    const WorldState world{pose, config.person, config.camera};
    bool person_event = false;
    bool face_event = false;

    while (odometry_clock.due(t)) {
      odometry_clock.advance();
      ++log.ticks.odometry;
      const double control_dt = 1.0 / config.rates.odometry_hz;
      if (mode == ControllerMode::PersonFollowing && last_person) {
        command = follower.step(*last_person, log.depth_model, config.camera,
                                control_dt, t);
      } else if (mode == ControllerMode::Frontalizing && setpoint) {
        command = inner.step(*setpoint, pose, control_dt, t);
      } else {
        command = VelocityCommand{0.0, 0.0, 0.0, t};
      }
      log.commands.push_back({t, mode, command, latest_error,
                              setpoint.value_or(Setpoint{pose.position, pose.yaw, t})});
    }
    while (images_clock.due(t)) {
      images_clock.advance();
      ++log.ticks.images;
    }
    while (pedestrian_clock.due(t)) {
      pedestrian_clock.advance();
      ++log.ticks.pedestrian;
      if (auto ev = pedestrian.sample(world, t)) {
        tracker.on_detection(*ev);
        last_person = ev;
        person_event = true;
        log.events.push_back({t, *ev, kNaN});
      }
    }
    while (tracker_clock.due(t)) {
      tracker_clock.advance();
      ++log.ticks.tracker;
      if (auto ev = tracker.sample(world, t)) {
        last_person = ev;
        person_event = true;
        log.events.push_back({t, *ev, kNaN});
      }
    }
    while (face_clock.due(t)) {
      face_clock.advance();
      ++log.ticks.face;
      if (auto res = face.sample(world, t)) {
        const auto& [ev, score] = *res;
        face_event = true;
        last_face_time = t;
        latest_error = score.error;
        log.events.push_back({t, ev, score.error});
        log.scores.push_back(score);

        const RangeBearing rb = relative_bearing(pose, config.person);
        const Embedding em = synthetic_embedding(rb.bearing, rb.range,
                                                 config.embedding, embedding_rng);
        log.similarities.push_back(
            {t, cosine_similarity(em, registered), rb.bearing, rb.range});

        const double est_range = face_range_estimate(config, ev.box);
        setpoint = frontalization_setpoint(score, ev.box, config.camera, pose,
                                           est_range, config.orbit, t);
      }
    }

    const ControllerMode next_mode = mode_arbiter(
        mode, person_event, face_event, t, last_face_time, config.face_dropout);
    if (next_mode != mode) {
      mode = next_mode;
      log.mode_transitions.push_back({t, mode});
      if (mode != ControllerMode::Frontalizing) {
        setpoint.reset();
        inner.reset();
      }
      if (mode != ControllerMode::PersonFollowing) follower.reset();
    }

    if (mode != ControllerMode::Grounded) {
      integrate_vehicle(pose, velocity, command, config.dt, config.vehicle.tau);
    }
    log.poses.push_back({t, pose.position, pose.yaw});
  }
  return log;
}

Pose pose_on_circle(const HeadPose& head, double bearing, double range) {
  const double station = head.facing - bearing;  // world angle head -> UAV
  Pose pose;
  pose.position = Vec3(head.position.x() + range * std::cos(station),
                       head.position.y() + range * std::sin(station),
                       head.position.z());
  pose.yaw = normalize_angle(station + kPi);  // face the head
  return pose;
}

std::vector<SweepCell> sweep(const ScenarioConfig& config,
                             const std::vector<double>& bearings,
                             const std::vector<double>& ranges,
                             int samples_per_cell) {
  validate(config);
  if (bearings.empty() || ranges.empty()) {
    throw std::invalid_argument("sweep: empty grid");
  }
  const ReferenceFaceSurface surface = ReferenceFaceSurface::ellipsoid();
  std::vector<SweepCell> cells;
  std::uint64_t cell_index = 0;
  for (double r : ranges) {
    for (double b : bearings) {
      NoiseModel noise = config.noise;
      noise.seed = config.seed;
      FaceDetector detector(noise, kSweepStreamBase + cell_index++, surface,
                            config.raster_resolution);
      const WorldState world{pose_on_circle(config.person, b, r), config.person,
                             config.camera};
      SweepCell cell{b, r, 0, 0.0, 0.0};
      for (int i = 0; i < samples_per_cell; ++i) {
        if (auto res = detector.sample(world, double(i))) {
          ++cell.detections;
          cell.mean_error += res->second.error;
        }
      }
      if (cell.detections > 0) {
        cell.mean_error /= cell.detections;
        cell.mean_accuracy = 1.0 - cell.mean_error;
      } else {
        cell.mean_error = kNaN;
        cell.mean_accuracy = kNaN;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<FieldCell> velocity_field(const ScenarioConfig& config,
                                      const std::vector<double>& bearings,
                                      const std::vector<double>& ranges) {
  validate(config);
  if (bearings.empty() || ranges.empty()) {
    throw std::invalid_argument("velocity_field: empty grid");
  }
  const ReferenceFaceSurface surface = ReferenceFaceSurface::ellipsoid();
  std::vector<FieldCell> cells;
  for (double r : ranges) {
    for (double b : bearings) {
      FieldCell cell{b, r, false, false, kNaN, VelocityCommand{}};
      const Pose pose = pose_on_circle(config.person, b, r);
      const Pose cam_pose = compose(pose, config.camera.mount);
      const auto box = face_bbox(config.camera, cam_pose, config.person);
      if (box && std::abs(b) < 0.5 * kPi) {
        cell.detecting = true;
        const FrontalizationScore score =
            score_view(surface, config.person, config.camera, cam_pose,
                       config.raster_resolution);
        cell.error = score.error;
        const double est_range = face_range_estimate(config, *box);
        cell.dead_zone =
            std::abs(score.error) < config.orbit.dead_zone_error &&
            est_range <= config.orbit.standoff + config.orbit.dead_zone_range_band;
        const Setpoint sp = frontalization_setpoint(
            score, *box, config.camera, pose, est_range, config.orbit, 0.0);
        InnerLoopController inner(config.gains);
        cell.command = inner.step(sp, pose, 1.0 / config.rates.odometry_hz, 0.0);
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace fsim
