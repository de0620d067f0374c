#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsim/estimation.hpp"

using namespace fsim;

namespace {

BoundingBox box_of_height(double h) {
  BoundingBox b;
  b.center_u = 320.0;
  b.center_v = 184.0;
  b.width = h * 0.25;
  b.height = h;
  return b;
}

}  // namespace

TEST_CASE("linear fit recovers an exact line") {
  std::vector<DepthSample> samples;
  for (double h = 50.0; h <= 300.0; h += 25.0) {
    samples.push_back({h, -0.02 * h + 8.0});
  }
  const DepthModel m = fit_depth_model(samples, DepthModelKind::Linear);
  CHECK(m.slope == doctest::Approx(-0.02).epsilon(1e-12));
  CHECK(m.intercept == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(m.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.height_min == doctest::Approx(50.0));
  CHECK(m.height_max == doctest::Approx(300.0));
}

TEST_CASE("inverse fit is exact for pinhole data") {
  // h = f * H / d  =>  d = (f * H) / h, an exact inverse law.
  const double f = 380.0, H = 1.7;
  std::vector<DepthSample> samples;
  for (double d = 1.0; d <= 6.0; d += 0.25) {
    samples.push_back({f * H / d, d});
  }
  const DepthModel m = fit_depth_model(samples, DepthModelKind::Inverse);
  CHECK(m.kind == DepthModelKind::Inverse);
  CHECK(m.slope == doctest::Approx(f * H).epsilon(1e-10));
  CHECK(m.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(m.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  for (double d = 1.2; d < 6.0; d += 0.7) {
    CHECK(estimate_depth(m, box_of_height(f * H / d)) ==
          doctest::Approx(d).epsilon(1e-9));
  }
}

TEST_CASE("MAD rejection discards a gross outlier without moving the fit") {
  std::vector<DepthSample> clean;
  for (double h = 60.0; h <= 240.0; h += 20.0) {
    clean.push_back({h, -0.025 * h + 7.5});
  }
  const DepthModel a = fit_depth_model(clean);

  // One gross outlier in either direction; single-pass rejection handles one.
  for (DepthSample outlier : {DepthSample{100.0, 15.0}, DepthSample{200.0, 0.5}}) {
    std::vector<DepthSample> dirty = clean;
    dirty.push_back(outlier);
    const DepthModel b = fit_depth_model(dirty);
    CHECK(b.slope == doctest::Approx(a.slope).epsilon(1e-9));
    CHECK(b.intercept == doctest::Approx(a.intercept).epsilon(1e-9));
    CHECK(b.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fit rejects underdetermined input") {
  std::vector<DepthSample> one = {{100.0, 3.0}};
  CHECK_THROWS_AS(fit_depth_model(one), std::invalid_argument);
  std::vector<DepthSample> same = {{100.0, 3.0}, {100.0, 4.0}};
  CHECK_THROWS_AS(fit_depth_model(same), std::invalid_argument);
  std::vector<DepthSample> none;
  CHECK_THROWS_AS(fit_depth_model(none), std::invalid_argument);
}

TEST_CASE("depth estimates are clamped to [0.3, 20]") {
  DepthModel m;
  m.kind = DepthModelKind::Linear;
  m.slope = -0.02;
  m.intercept = 8.0;
  CHECK(estimate_depth(m, box_of_height(1000.0)) == doctest::Approx(kDepthClampMin));
  CHECK(estimate_depth(m, box_of_height(-700.0)) == doctest::Approx(kDepthClampMax));
  CHECK(estimate_depth(m, box_of_height(150.0)) == doctest::Approx(5.0));
}

TEST_CASE("pixel offset to yaw error") {
  PinholeCamera cam;
  cam.focal_px = 400.0;
  cam.width_px = 640;
  BoundingBox centered = box_of_height(100.0);
  CHECK(pixel_offset_to_yaw_error(centered, cam) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  BoundingBox right = centered;
  right.center_u = 320.0 + 400.0;  // 45 degrees off axis
  CHECK(pixel_offset_to_yaw_error(right, cam) ==
        doctest::Approx(std::atan(1.0)).epsilon(1e-12));

  BoundingBox left = centered;
  left.center_u = 320.0 - 100.0;
  CHECK(pixel_offset_to_yaw_error(left, cam) ==
        doctest::Approx(std::atan(-0.25)).epsilon(1e-12));
}
