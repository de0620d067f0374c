#include "fsim/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

ReferenceFaceSurface ReferenceFaceSurface::ellipsoid(int rows, int cols,
                                                     double semi_x,
                                                     double semi_y,
                                                     double semi_z) {
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("ReferenceFaceSurface: need at least a 2x2 grid");
  }
  ReferenceFaceSurface s;
  s.rows_ = rows;
  s.cols_ = cols;
  s.cells_.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    // Elevation sweeps bottom to top over the open interval (-pi/2, pi/2).
    const double psi = 0.5 * kPi * ((2.0 * i + 1.0) / rows - 1.0);
    for (int j = 0; j < cols; ++j) {
      // Lateral angle sweeps from the subject's left (+y) to the right, so
      // that mirroring col <-> cols-1-col negates y exactly.
      const double phi = 0.5 * kPi * (1.0 - (2.0 * j + 1.0) / cols);
      SurfaceCell cell;
      cell.point = Vec3(semi_x * std::cos(psi) * std::cos(phi),
                        semi_y * std::cos(psi) * std::sin(phi),
                        semi_z * std::sin(psi));
      cell.normal = Vec3(cell.point.x() / (semi_x * semi_x),
                         cell.point.y() / (semi_y * semi_y),
                         cell.point.z() / (semi_z * semi_z))
                        .normalized();
      cell.row = i;
      cell.col = j;
      s.cells_.push_back(cell);
    }
  }
  return s;
}

SurfaceHalf ReferenceFaceSurface::half(int col) const {
  if (cols_ % 2 == 1 && col == cols_ / 2) return SurfaceHalf::Midline;
  return col < cols_ / 2 ? SurfaceHalf::Left : SurfaceHalf::Right;
}

CorrespondenceCounts count_correspondences(const ReferenceFaceSurface& surface,
                                           const HeadPose& head,
                                           const PinholeCamera& camera,
                                           const Pose& camera_pose,
                                           int raster_resolution) {
  if (raster_resolution < 8) {
    throw std::invalid_argument("count_correspondences: raster must be >= 8x8");
  }
  const auto& cells = surface.cells();
  const double cf = std::cos(head.facing);
  const double sf = std::sin(head.facing);

  // World-frame cell points, camera->cell unit directions, and front-facing
  // flags (outward normal toward the camera).
  std::vector<Vec3> dirs(cells.size());
  std::vector<char> front(cells.size());
  double min_u = 1e30, max_u = -1e30, min_v = 1e30, max_v = -1e30;
  bool any_visible = false;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Vec3& pl = cells[k].point;
    const Vec3 pw = head.position + Vec3(cf * pl.x() - sf * pl.y(),
                                         sf * pl.x() + cf * pl.y(), pl.z());
    const Vec3& nl = cells[k].normal;
    const Vec3 nw(cf * nl.x() - sf * nl.y(), sf * nl.x() + cf * nl.y(), nl.z());
    dirs[k] = (pw - camera_pose.position).normalized();
    front[k] = nw.dot(camera_pose.position - pw) > 0.0 ? 1 : 0;
    if (const auto px = project_point(camera, camera_pose, pw)) {
      any_visible = true;
      min_u = std::min(min_u, px->u);
      max_u = std::max(max_u, px->u);
      min_v = std::min(min_v, px->v);
      max_v = std::max(max_v, px->v);
    }
  }
  if (!any_visible) {
    throw std::runtime_error("count_correspondences: face outside camera frustum");
  }

  CorrespondenceCounts out;
  out.counts.assign(cells.size(), 0);
  const int n = raster_resolution;
  for (int i = 0; i < n; ++i) {
    const double v = min_v + (max_v - min_v) * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double u = min_u + (max_u - min_u) * (j + 0.5) / n;
      const Vec3 ray = pixel_ray(camera, camera_pose, u, v);
      int best = -1;
      double best_dot = -2.0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (!front[k]) continue;
        const double d = ray.dot(dirs[k]);
        if (d > best_dot) {
          best_dot = d;
          best = static_cast<int>(k);
        }
      }
      if (best >= 0) ++out.counts[best];
    }
  }
  return out;
}

VisibilityMap visibility(const CorrespondenceCounts& counts) {
  VisibilityMap vis;
  vis.values.reserve(counts.counts.size());
  for (int n : counts.counts) {
    if (n < 0) throw std::invalid_argument("visibility: negative count");
    vis.values.push_back(1.0 - std::exp(-double(n)));
  }
  return vis;
}

FrontalizationScore frontalization_error(const VisibilityMap& vis,
                                         const ReferenceFaceSurface& surface,
                                         double timestamp) {
  if (vis.values.size() != surface.size()) {
    throw std::invalid_argument("frontalization_error: map/surface size mismatch");
  }
  double left_sum = 0.0, right_sum = 0.0;
  int left_n = 0, right_n = 0;
  const auto& cells = surface.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    switch (surface.half(cells[k].col)) {
      case SurfaceHalf::Left:
        left_sum += vis.values[k];
        ++left_n;
        break;
      case SurfaceHalf::Right:
        right_sum += vis.values[k];
        ++right_n;
        break;
      case SurfaceHalf::Midline:
        break;
    }
  }
  if (left_n == 0 || right_n == 0) {
    throw std::invalid_argument("frontalization_error: empty surface half");
  }
  FrontalizationScore score;
  score.error = right_sum / right_n - left_sum / left_n;
  score.accuracy = 1.0 - score.error;
  score.timestamp = timestamp;
  return score;
}

FrontalizationScore score_view(const ReferenceFaceSurface& surface,
                               const HeadPose& head,
                               const PinholeCamera& camera,
                               const Pose& camera_pose,
                               int raster_resolution,
                               double timestamp) {
  const auto counts = count_correspondences(surface, head, camera, camera_pose,
                                            raster_resolution);
  return frontalization_error(visibility(counts), surface, timestamp);
}

}  // namespace fsim
