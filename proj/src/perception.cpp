#include "fsim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsim {

namespace {

BoundingBox perturb(const BoundingBox& box, const NoiseModel& noise,
                    double sigma_scale, const PinholeCamera& camera, Rng& rng) {
  BoundingBox out = box;
  if (noise.center_sigma_px > 0.0) {
    out.center_u += sigma_scale * noise.center_sigma_px * rng.gaussian();
    out.center_v += sigma_scale * noise.center_sigma_px * rng.gaussian();
  }
  if (noise.height_sigma_frac > 0.0) {
    const double s = 1.0 + sigma_scale * noise.height_sigma_frac * rng.gaussian();
    out.height *= std::max(0.0, s);
    out.width *= std::max(0.0, s);
  }
  out.center_u = std::clamp(out.center_u, 0.0, double(camera.width_px));
  out.center_v = std::clamp(out.center_v, 0.0, double(camera.height_px));
  return out;
}

}  // namespace

double detection_probability(double range, DetectionKind kind) {
  if (!(range > 0.0)) {
    throw std::invalid_argument("detection_probability: range must be positive");
  }
  const double r0 = kind == DetectionKind::Face ? 3.5 : 7.0;
  const double k = kind == DetectionKind::Face ? 3.0 : 1.5;
  return 1.0 / (1.0 + std::exp(k * (range - r0)));
}

std::optional<DetectionEvent> PedestrianDetector::sample(const WorldState& world,
                                                         double t) {
  const Pose cam_pose = compose(world.uav, world.camera.mount);
  const auto box = person_bbox(world.camera, cam_pose, world.head);
  if (!box) return std::nullopt;
  const double range = relative_bearing(world.uav, world.head).range;
  if (rng_.uniform() >= detection_probability(range, DetectionKind::Person)) {
    return std::nullopt;
  }
  if (noise_.false_negative_prob > 0.0 &&
      rng_.uniform() < noise_.false_negative_prob) {
    return std::nullopt;
  }
  return DetectionEvent{DetectionKind::Person, DetectionSource::Detector,
                        perturb(*box, noise_, 1.0, world.camera, rng_), t};
}

std::optional<DetectionEvent> BoxTracker::sample(const WorldState& world,
                                                 double t) {
  if (!last_detection_) return std::nullopt;
  const Pose cam_pose = compose(world.uav, world.camera.mount);
  const auto box = person_bbox(world.camera, cam_pose, world.head);
  if (!box) return std::nullopt;
  return DetectionEvent{DetectionKind::Person, DetectionSource::Tracker,
                        perturb(*box, noise_, 2.0, world.camera, rng_), t};
}

std::optional<std::pair<DetectionEvent, FrontalizationScore>>
FaceDetector::sample(const WorldState& world, double t) {
  const Pose cam_pose = compose(world.uav, world.camera.mount);
  const auto box = face_bbox(world.camera, cam_pose, world.head);
  if (!box) return std::nullopt;
  const RangeBearing rb = relative_bearing(world.uav, world.head);
  if (std::abs(rb.bearing) >= 0.5 * std::numbers::pi) return std::nullopt;
  if (rng_.uniform() >= detection_probability(rb.range, DetectionKind::Face)) {
    return std::nullopt;
  }
  if (noise_.false_negative_prob > 0.0 &&
      rng_.uniform() < noise_.false_negative_prob) {
    return std::nullopt;
  }
  DetectionEvent event{DetectionKind::Face, DetectionSource::Detector,
                       perturb(*box, noise_, 1.0, world.camera, rng_), t};
  const auto score = score_view(*surface_, world.head, world.camera, cam_pose,
                                raster_, t);
  return std::make_pair(event, score);
}

}  // namespace fsim
