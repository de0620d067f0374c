#pragma once

#include <vector>

#include "fsim/geometry.hpp"

// Visibility-based frontalization scoring. A query raster is laid over the
// projected face region; each raster pixel's inverse ray is matched to the
// nearest front-facing cell of a reference 3D face surface. Per-cell hit
// counts N_q become visibility scores v(q) = 1 - exp(-N_q), and the
// frontalization error is the right-half mean minus the left-half mean.

namespace fsim {

/// One cell of the discretized face surface, in the head-local frame
/// (face normal along local +x, +y toward the subject's left, z up).
struct SurfaceCell {
  Vec3 point;   // head-local, meters
  Vec3 normal;  // outward unit normal, head-local
  int row = 0;
  int col = 0;
};

enum class SurfaceHalf { Left, Right, Midline };

/// Bilaterally symmetric grid sampled on the front half of an ellipsoid.
/// Columns run from the subject's left (col 0) to the subject's right.
class ReferenceFaceSurface {
 public:
  /// Default semi-axes 0.09 (depth), 0.07 (lateral), 0.11 (vertical) meters.
  static ReferenceFaceSurface ellipsoid(int rows = 16, int cols = 16,
                                        double semi_x = 0.09,
                                        double semi_y = 0.07,
                                        double semi_z = 0.11);

  const std::vector<SurfaceCell>& cells() const { return cells_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  SurfaceHalf half(int col) const;
  std::size_t size() const { return cells_.size(); }

 private:
  std::vector<SurfaceCell> cells_;
  int rows_ = 0;
  int cols_ = 0;
};

/// Per-cell hit counts N_q, indexed like ReferenceFaceSurface::cells().
struct CorrespondenceCounts {
  std::vector<int> counts;
};

/// Per-cell v(q) in [0, 1).
struct VisibilityMap {
  std::vector<double> values;
};

struct FrontalizationScore {
  double error = 0.0;     // right-half mean visibility minus left-half mean
  double accuracy = 1.0;  // 1 - error, identity holds exactly
  double timestamp = 0.0;
};

/// Raster every pixel of a raster_resolution^2 grid over the projected face
/// bounding box and accumulate nearest-front-facing-cell hits. Throws
/// std::runtime_error when the face is fully outside the frustum.
CorrespondenceCounts count_correspondences(const ReferenceFaceSurface& surface,
                                           const HeadPose& head,
                                           const PinholeCamera& camera,
                                           const Pose& camera_pose,
                                           int raster_resolution = 64);

/// v(q) = 1 - exp(-N_q).
VisibilityMap visibility(const CorrespondenceCounts& counts);

/// Right-half mean minus left-half mean; midline cells (odd column count)
/// belong to neither half. Throws std::invalid_argument on an empty half.
FrontalizationScore frontalization_error(const VisibilityMap& vis,
                                         const ReferenceFaceSurface& surface,
                                         double timestamp = 0.0);

/// Composition of the three steps above.
FrontalizationScore score_view(const ReferenceFaceSurface& surface,
                               const HeadPose& head,
                               const PinholeCamera& camera,
                               const Pose& camera_pose,
                               int raster_resolution = 64,
                               double timestamp = 0.0);

}  // namespace fsim
