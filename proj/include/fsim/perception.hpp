#pragma once

#include <optional>
#include <utility>

#include "fsim/geometry.hpp"
#include "fsim/rng.hpp"
#include "fsim/visibility.hpp"

// Emulated detector/tracker stack: rate-limited, range-gated, noisy
// bounding-box sensors standing in for the pedestrian detector, the tracker
// bridging its gaps, and the face detector. No false positives: every box
// derives from the ground-truth geometry.

namespace fsim {

/// Node frequencies during flight; defaults match the flight logs.
struct SensorRates {
  double onboard_images_hz = 1.75;
  double odometry_hz = 5.0;
  double pedestrian_hz = 0.9;
  double tracker_hz = 1.4;
  double face_hz = 1.4;
};

enum class DetectionKind { Person, Face };
enum class DetectionSource { Detector, Tracker };

struct DetectionEvent {
  DetectionKind kind = DetectionKind::Person;
  DetectionSource source = DetectionSource::Detector;
  BoundingBox box;
  double timestamp = 0.0;
};

struct NoiseModel {
  double center_sigma_px = 0.0;     // box-center jitter
  double height_sigma_frac = 0.0;   // box-size jitter, fraction of size
  double false_negative_prob = 0.0; // extra misses on top of the range gate
  std::uint64_t seed = 0;
};

/// Everything a sensor can see; ground truth owned by the harness.
struct WorldState {
  Pose uav;
  HeadPose head;
  PinholeCamera camera;
};

/// Logistic range gate: p(r) = 1 / (1 + exp(k (r - r0))). Face r0 = 3.5 m,
/// k = 3; person r0 = 7 m, k = 1.5. Throws on nonpositive range.
double detection_probability(double range, DetectionKind kind);

class PedestrianDetector {
 public:
  PedestrianDetector(const NoiseModel& noise, std::uint64_t stream_id)
      : noise_(noise), rng_(noise.seed, stream_id) {}

  std::optional<DetectionEvent> sample(const WorldState& world, double t);

 private:
  NoiseModel noise_;
  Rng rng_;
};

/// Relay of ground truth with inflated noise (2x detector sigma) between
/// detector hits. Emits nothing until the first detector event.
class BoxTracker {
 public:
  BoxTracker(const NoiseModel& noise, std::uint64_t stream_id)
      : noise_(noise), rng_(noise.seed, stream_id) {}

  void on_detection(const DetectionEvent& event) { last_detection_ = event; }
  std::optional<DetectionEvent> sample(const WorldState& world, double t);

 private:
  NoiseModel noise_;
  Rng rng_;
  std::optional<DetectionEvent> last_detection_;
};

/// Face detector plus pose-quality scoring. Gated by the range logistic and
/// by geometric visibility (|bearing| < 90 deg, head inside the frustum).
class FaceDetector {
 public:
  FaceDetector(const NoiseModel& noise, std::uint64_t stream_id,
               const ReferenceFaceSurface& surface, int raster_resolution = 64)
      : noise_(noise),
        rng_(noise.seed, stream_id),
        surface_(&surface),
        raster_(raster_resolution) {}

  std::optional<std::pair<DetectionEvent, FrontalizationScore>> sample(
      const WorldState& world, double t);

 private:
  NoiseModel noise_;
  Rng rng_;
  const ReferenceFaceSurface* surface_;
  int raster_;
};

}  // namespace fsim
