#include "fsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBodyWidthFraction = 0.25;  // shoulder width / person height
constexpr double kFaceWidthFraction = 0.8;   // face box width / height

struct CameraFrame {
  Vec3 origin;
  Vec3 forward;
  Vec3 right;
  Vec3 up;
};

CameraFrame camera_frame(const Pose& pose) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {pose.position, Vec3(c, s, 0.0), Vec3(s, -c, 0.0), Vec3(0.0, 0.0, 1.0)};
}

bool inside_image(const PinholeCamera& cam, double u, double v) {
  return u >= 0.0 && u <= cam.width_px && v >= 0.0 && v <= cam.height_px;
}

std::optional<BoundingBox> clamp_box(const PinholeCamera& cam, double cu,
                                     double cv, double w, double h) {
  const double u0 = std::clamp(cu - 0.5 * w, 0.0, double(cam.width_px));
  const double u1 = std::clamp(cu + 0.5 * w, 0.0, double(cam.width_px));
  const double v0 = std::clamp(cv - 0.5 * h, 0.0, double(cam.height_px));
  const double v1 = std::clamp(cv + 0.5 * h, 0.0, double(cam.height_px));
  if (u1 <= u0 || v1 <= v0) return std::nullopt;
  return BoundingBox{0.5 * (u0 + u1), 0.5 * (v0 + v1), u1 - u0, v1 - v0};
}

}  // namespace

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("normalize_angle: non-finite angle");
  }
  double r = std::remainder(theta, 2.0 * kPi);  // (-pi, pi] up to the -pi edge
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Pose compose(const Pose& body, const Pose& offset) {
  const double c = std::cos(body.yaw);
  const double s = std::sin(body.yaw);
  Pose out;
  out.position = body.position + Vec3(c * offset.position.x() - s * offset.position.y(),
                                      s * offset.position.x() + c * offset.position.y(),
                                      offset.position.z());
  out.yaw = normalize_angle(body.yaw + offset.yaw);
  return out;
}

std::optional<PixelPoint> project_point(const PinholeCamera& camera,
                                        const Pose& camera_world_pose,
                                        const Vec3& p) {
  const CameraFrame f = camera_frame(camera_world_pose);
  const Vec3 rel = p - f.origin;
  const double depth = rel.dot(f.forward);
  if (depth <= 0.0) return std::nullopt;
  const double u = 0.5 * camera.width_px + camera.focal_px * rel.dot(f.right) / depth;
  const double v = 0.5 * camera.height_px - camera.focal_px * rel.dot(f.up) / depth;
  if (!inside_image(camera, u, v)) return std::nullopt;
  return PixelPoint{u, v, depth};
}

Vec3 pixel_ray(const PinholeCamera& camera, const Pose& camera_world_pose,
               double u, double v) {
  const CameraFrame f = camera_frame(camera_world_pose);
  const Vec3 dir = f.forward +
                   f.right * ((u - 0.5 * camera.width_px) / camera.focal_px) +
                   f.up * ((0.5 * camera.height_px - v) / camera.focal_px);
  return dir.normalized();
}

std::optional<BoundingBox> person_bbox(const PinholeCamera& camera,
                                       const Pose& camera_world_pose,
                                       const HeadPose& head) {
  const double crown_z = head.position.z() + 0.5 * head.head_height;
  const Vec3 crown(head.position.x(), head.position.y(), crown_z);
  const Vec3 feet(head.position.x(), head.position.y(), crown_z - head.person_height);

  const CameraFrame f = camera_frame(camera_world_pose);
  const double depth = (crown - f.origin).dot(f.forward);
  if (depth <= 0.0) return std::nullopt;

  const double cu = 0.5 * camera.width_px +
                    camera.focal_px * (crown - f.origin).dot(f.right) / depth;
  const double v_top = 0.5 * camera.height_px - camera.focal_px * (crown - f.origin).dot(f.up) / depth;
  const double v_bot = 0.5 * camera.height_px - camera.focal_px * (feet - f.origin).dot(f.up) / depth;
  const double h = v_bot - v_top;
  const double w = camera.focal_px * kBodyWidthFraction * head.person_height / depth;
  const double cv = 0.5 * (v_top + v_bot);
  if (!inside_image(camera, cu, cv)) return std::nullopt;
  return clamp_box(camera, cu, cv, w, h);
}

std::optional<BoundingBox> face_bbox(const PinholeCamera& camera,
                                     const Pose& camera_world_pose,
                                     const HeadPose& head) {
  const auto center = project_point(camera, camera_world_pose, head.position);
  if (!center) return std::nullopt;
  const double h = camera.focal_px * head.head_height / center->depth;
  return clamp_box(camera, center->u, center->v, kFaceWidthFraction * h, h);
}

RangeBearing relative_bearing(const Pose& uav, const HeadPose& head) {
  const double dx = uav.position.x() - head.position.x();
  const double dy = uav.position.y() - head.position.y();
  const double range = std::hypot(dx, dy);
  if (range < 1e-9) {
    throw std::domain_error("relative_bearing: coincident positions");
  }
  // Positive bearing = UAV on the subject's right (clockwise from the face
  // normal when seen from above).
  const double bearing = normalize_angle(head.facing - std::atan2(dy, dx));
  return RangeBearing{range, bearing};
}

}  // namespace fsim
