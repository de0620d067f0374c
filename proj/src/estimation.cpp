#include "fsim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fsim {

namespace {

double regressor(DepthModelKind kind, double height) {
  return kind == DepthModelKind::Inverse ? 1.0 / height : height;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit ols(DepthModelKind kind, const std::vector<DepthSample>& samples) {
  const double n = double(samples.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, d] : samples) {
    const double x = regressor(kind, h);
    sx += x;
    sy += d;
    sxx += x * x;
    sxy += x * d;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * std::max(1.0, n * sxx)) {
    throw std::invalid_argument("fit_depth_model: underdetermined (need 2 distinct heights)");
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (const auto& [h, d] : samples) {
    const double r = d - (fit.slope * regressor(kind, h) + fit.intercept);
    ss_res += r * r;
    ss_tot += (d - mean_y) * (d - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace

DepthModel fit_depth_model(std::span<const DepthSample> samples,
                           DepthModelKind kind) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_depth_model: need at least 2 samples");
  }
  std::vector<DepthSample> all(samples.begin(), samples.end());
  const LineFit first = ols(kind, all);

  // Single rejection pass: drop samples whose absolute residual exceeds
  // 3x the median absolute residual.
  std::vector<double> abs_res(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    abs_res[i] = std::abs(all[i].second -
                          (first.slope * regressor(kind, all[i].first) + first.intercept));
  }
  std::vector<double> sorted = abs_res;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  double mad = sorted[sorted.size() / 2];
  if (sorted.size() % 2 == 0) {
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + sorted.size() / 2);
    mad = 0.5 * (mad + lower);
  }
  std::vector<DepthSample> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (abs_res[i] <= 3.0 * mad) kept.push_back(all[i]);
  }

  LineFit final = first;
  std::vector<DepthSample>* used = &all;
  if (kept.size() >= 2 && kept.size() < all.size()) {
    try {
      final = ols(kind, kept);
      used = &kept;
    } catch (const std::invalid_argument&) {
      // Rejection left degenerate data; keep the initial fit.
    }
  }

  DepthModel model;
  model.kind = kind;
  model.slope = final.slope;
  model.intercept = final.intercept;
  model.r_squared = final.r_squared;
  model.height_min = model.height_max = (*used)[0].first;
  for (const auto& [h, d] : *used) {
    model.height_min = std::min(model.height_min, h);
    model.height_max = std::max(model.height_max, h);
  }
  return model;
}

double estimate_depth(const DepthModel& model, const BoundingBox& box) {
  const double raw = model.kind == DepthModelKind::Inverse
                         ? model.slope / std::max(box.height, 1e-9) + model.intercept
                         : model.slope * box.height + model.intercept;
  return std::clamp(raw, kDepthClampMin, kDepthClampMax);
}

double pixel_offset_to_yaw_error(const BoundingBox& box,
                                 const PinholeCamera& camera) {
  return std::atan((box.center_u - 0.5 * camera.width_px) / camera.focal_px);
}

}  // namespace fsim
