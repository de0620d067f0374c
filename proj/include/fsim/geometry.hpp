#pragma once

#include <Eigen/Core>
#include <optional>

// World-frame kinematics and pinhole projection shared by every other
// module. Conventions: right-handed world frame, z up, yaw measured from
// the +x axis and kept in (-pi, pi]. The world is treated as planar for
// control; z matters only for projection.

namespace fsim {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// UAV (or camera) position plus heading.
struct Pose {
  Vec3 position{0.0, 0.0, 0.0};
  double yaw = 0.0;  // radians in (-pi, pi]
};

/// Person's head: center position, the world-frame direction the face
/// points, and body dimensions used for bounding-box geometry.
struct HeadPose {
  Vec3 position{0.0, 0.0, 1.6};
  double facing = 0.0;          // radians, world frame
  double head_height = 0.24;    // meters, (0.15, 0.35)
  double person_height = 1.7;   // meters, (1.2, 2.2)
};

/// Ideal pinhole camera. The camera looks along body +x; image u grows to
/// the camera's right (world -y at zero yaw), v grows downward.
struct PinholeCamera {
  double focal_px = 380.0;
  int width_px = 640;
  int height_px = 368;
  Pose mount;  // offset relative to the UAV body, identity by default
};

/// Axis-aligned pixel box, center + size.
struct BoundingBox {
  double center_u = 0.0;
  double center_v = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;  // camera-frame forward coordinate, meters
};

struct RangeBearing {
  double range = 0.0;    // horizontal distance UAV -> head, meters
  double bearing = 0.0;  // signed angle from the face normal; 0 = frontal,
                         // positive = UAV on the subject's right
};

/// Reduce an angle into (-pi, pi]. Throws std::invalid_argument on
/// non-finite input.
double normalize_angle(double theta);

/// Compose the camera mount offset with the carrying body pose.
Pose compose(const Pose& body, const Pose& offset);

/// Project a world point through the camera. Empty when the point is behind
/// the image plane or outside the frustum.
std::optional<PixelPoint> project_point(const PinholeCamera& camera,
                                        const Pose& camera_world_pose,
                                        const Vec3& p);

/// Unit-length world-frame direction of the inverse ray through pixel (u, v).
Vec3 pixel_ray(const PinholeCamera& camera, const Pose& camera_world_pose,
               double u, double v);

/// Ground-truth person box: vertical feet-to-crown segment plus a fixed
/// body-width proportion. Empty when the person is outside the frustum.
std::optional<BoundingBox> person_bbox(const PinholeCamera& camera,
                                       const Pose& camera_world_pose,
                                       const HeadPose& head);

/// Ground-truth face box around the head. Empty outside the frustum.
std::optional<BoundingBox> face_bbox(const PinholeCamera& camera,
                                     const Pose& camera_world_pose,
                                     const HeadPose& head);

/// Horizontal range and signed bearing of the UAV relative to the face
/// normal. Throws on coincident positions.
RangeBearing relative_bearing(const Pose& uav, const HeadPose& head);

}  // namespace fsim
