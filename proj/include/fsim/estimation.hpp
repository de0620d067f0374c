#pragma once

#include <span>
#include <utility>

#include "fsim/geometry.hpp"

// Bounding box -> control-frame quantities: range from box height via the
// linear height/distance correlation (with a single-pass 3xMAD outlier
// rejection), and horizontal pixel offset -> yaw error.

namespace fsim {

enum class DepthModelKind {
  Linear,   // d = slope * h + intercept (default)
  Inverse,  // d = slope / h + intercept, exact for a pinhole
};

struct DepthModel {
  DepthModelKind kind = DepthModelKind::Linear;
  double slope = 0.0;      // m/px (Linear, negative) or m*px (Inverse)
  double intercept = 0.0;  // meters
  double height_min = 0.0; // pixel range spanned by the kept calibration data
  double height_max = 0.0;
  double r_squared = 0.0;
};

/// Calibration sample: (box height in pixels, true distance in meters).
using DepthSample = std::pair<double, double>;

inline constexpr double kDepthClampMin = 0.3;  // meters
inline constexpr double kDepthClampMax = 20.0;

/// Least squares fit with one pass of 3xMAD residual rejection. Throws
/// std::invalid_argument with fewer than 2 distinct heights.
DepthModel fit_depth_model(std::span<const DepthSample> samples,
                           DepthModelKind kind = DepthModelKind::Linear);

/// Evaluate the model on a box height; prediction clamped to [0.3, 20] m.
double estimate_depth(const DepthModel& model, const BoundingBox& box);

/// atan((center_u - width/2) / focal). Positive = box right of center =
/// turn right.
double pixel_offset_to_yaw_error(const BoundingBox& box,
                                 const PinholeCamera& camera);

}  // namespace fsim
