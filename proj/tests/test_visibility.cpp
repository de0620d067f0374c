#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fsim/geometry.hpp"
#include "fsim/visibility.hpp"

using namespace fsim;

namespace {

constexpr double kPi = std::numbers::pi;

PinholeCamera test_camera() {
  PinholeCamera cam;
  cam.focal_px = 400.0;
  return cam;
}

Pose camera_at_bearing(const HeadPose& head, double bearing, double range) {
  const double station = head.facing - bearing;
  Pose pose;
  pose.position = head.position + range * Vec3(std::cos(station), std::sin(station), 0.0);
  pose.yaw = normalize_angle(station + kPi);
  return pose;
}

// Brute-force reference: for every raster pixel over the projected face
// bounding box, cast the inverse ray and pick the nearest front-facing cell
// by angular distance. Written naively and independently of the library's
// precomputed path.
std::vector<int> oracle_counts(const ReferenceFaceSurface& surface,
                               const HeadPose& head, const PinholeCamera& camera,
                               const Pose& camera_pose, int raster) {
  const auto& cells = surface.cells();
  const double cf = std::cos(head.facing);
  const double sf = std::sin(head.facing);
  auto to_world = [&](const Vec3& p) -> Vec3 {
    return head.position + Vec3(cf * p.x() - sf * p.y(),
                                sf * p.x() + cf * p.y(), p.z());
  };
  auto normal_world = [&](const Vec3& n) -> Vec3 {
    return Vec3(cf * n.x() - sf * n.y(), sf * n.x() + cf * n.y(), n.z());
  };

  double min_u = 1e30, max_u = -1e30, min_v = 1e30, max_v = -1e30;
  for (const auto& cell : cells) {
    const auto px = project_point(camera, camera_pose, to_world(cell.point));
    if (!px) continue;
    min_u = std::min(min_u, px->u);
    max_u = std::max(max_u, px->u);
    min_v = std::min(min_v, px->v);
    max_v = std::max(max_v, px->v);
  }

  std::vector<int> counts(cells.size(), 0);
  for (int i = 0; i < raster; ++i) {
    for (int j = 0; j < raster; ++j) {
      const double v = min_v + (max_v - min_v) * (i + 0.5) / raster;
      const double u = min_u + (max_u - min_u) * (j + 0.5) / raster;
      const Vec3 ray = pixel_ray(camera, camera_pose, u, v);
      int best = -1;
      double best_dot = -2.0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const Vec3 pw = to_world(cells[k].point);
        const Vec3 nw = normal_world(cells[k].normal);
        if (nw.dot(camera_pose.position - pw) <= 0.0) continue;  // back-facing
        const double d = ray.dot((pw - camera_pose.position).normalized());
        if (d > best_dot) {
          best_dot = d;
          best = static_cast<int>(k);
        }
      }
      if (best >= 0) ++counts[best];
    }
  }
  return counts;
}

}  // namespace

TEST_CASE("reference surface is bilaterally symmetric") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  const auto& cells = surface.cells();
  const int cols = surface.cols();
  for (const auto& cell : cells) {
    const auto& mirror = cells[cell.row * cols + (cols - 1 - cell.col)];
    CHECK(mirror.point.x() == doctest::Approx(cell.point.x()));
    CHECK(mirror.point.y() == doctest::Approx(-cell.point.y()));
    CHECK(mirror.point.z() == doctest::Approx(cell.point.z()));
  }
  CHECK(cells.size() >= 4);
}

TEST_CASE("half labels split columns; odd midline excluded") {
  const auto even = ReferenceFaceSurface::ellipsoid(4, 4);
  CHECK(even.half(0) == SurfaceHalf::Left);
  CHECK(even.half(1) == SurfaceHalf::Left);
  CHECK(even.half(2) == SurfaceHalf::Right);
  CHECK(even.half(3) == SurfaceHalf::Right);
  const auto odd = ReferenceFaceSurface::ellipsoid(5, 5);
  CHECK(odd.half(1) == SurfaceHalf::Left);
  CHECK(odd.half(2) == SurfaceHalf::Midline);
  CHECK(odd.half(3) == SurfaceHalf::Right);
}

TEST_CASE("visibility evaluates 1 - exp(-N)") {
  CorrespondenceCounts counts;
  counts.counts = {0, 1, 3};
  const auto vis = visibility(counts);
  CHECK(vis.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vis.values[1] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(vis.values[2] == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
  SUBCASE("zero iff count zero, strictly increasing") {
    double prev = -1.0;
    for (int n = 0; n <= 20; ++n) {
      CorrespondenceCounts c{{n}};
      const double v = visibility(c).values[0];
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      CHECK(v > prev);
      CHECK((v == 0.0) == (n == 0));
      prev = v;
    }
  }
}

TEST_CASE("frontalization_error of uniform and half-lit maps") {
  const auto surface = ReferenceFaceSurface::ellipsoid(4, 4);
  VisibilityMap uniform;
  uniform.values.assign(16, 0.25);
  CHECK(frontalization_error(uniform, surface).error == doctest::Approx(0.0));

  VisibilityMap half;
  half.values.assign(16, 0.0);
  const double v1 = 1.0 - std::exp(-1.0);
  for (const auto& cell : surface.cells()) {
    if (surface.half(cell.col) == SurfaceHalf::Right) {
      half.values[cell.row * 4 + cell.col] = v1;
    }
  }
  const auto score = frontalization_error(half, surface);
  CHECK(score.error == doctest::Approx(v1).epsilon(1e-12));
  CHECK(score.accuracy + score.error == 1.0);

  SUBCASE("mirrored map negates the error") {
    VisibilityMap mirrored;
    mirrored.values.assign(16, 0.0);
    for (const auto& cell : surface.cells()) {
      mirrored.values[cell.row * 4 + (3 - cell.col)] = half.values[cell.row * 4 + cell.col];
    }
    CHECK(frontalization_error(mirrored, surface).error ==
          doctest::Approx(-score.error).epsilon(1e-12));
  }
}

TEST_CASE("frontal view: mirrored-cell counts differ by at most 1") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  HeadPose head;
  head.position = Vec3(0.0, 0.0, 1.6);
  const Pose cam_pose = camera_at_bearing(head, 0.0, 2.0);
  const auto counts = count_correspondences(surface, head, test_camera(), cam_pose, 64);
  const int cols = surface.cols();
  for (const auto& cell : surface.cells()) {
    const int k = cell.row * cols + cell.col;
    const int m = cell.row * cols + (cols - 1 - cell.col);
    CHECK(std::abs(counts.counts[k] - counts.counts[m]) <= 1);
  }
}

TEST_CASE("right profile view leaves the left half unhit") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  HeadPose head;
  head.position = Vec3(0.0, 0.0, 1.6);
  const Pose cam_pose = camera_at_bearing(head, kPi / 2.0, 2.0);
  const auto counts = count_correspondences(surface, head, test_camera(), cam_pose, 64);
  for (const auto& cell : surface.cells()) {
    if (surface.half(cell.col) == SurfaceHalf::Left) {
      CHECK(counts.counts[cell.row * surface.cols() + cell.col] == 0);
    }
  }
}

TEST_CASE("counts match the brute-force oracle cell-for-cell") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  HeadPose head;
  head.position = Vec3(0.2, -0.1, 1.6);
  head.facing = 0.4;
  const PinholeCamera cam = test_camera();
  const Pose cam_pose = camera_at_bearing(head, kPi / 6.0, 2.0);  // +30 degrees
  const auto counts = count_correspondences(surface, head, cam, cam_pose, 64);
  const auto expected = oracle_counts(surface, head, cam, cam_pose, 64);
  REQUIRE(counts.counts.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(counts.counts[k] == expected[k]);
  }
}

TEST_CASE("count_correspondences throws when the face is outside the frustum") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  HeadPose head;
  head.position = Vec3(-2.0, 0.0, 1.6);
  CHECK_THROWS_AS(count_correspondences(surface, head, test_camera(),
                                        Pose{Vec3(0, 0, 1.6), 0.0}, 64),
                  std::runtime_error);
}

TEST_CASE("score_view: frontal near zero, mirror antisymmetry, monotone in bearing") {
  const auto surface = ReferenceFaceSurface::ellipsoid();
  HeadPose head;
  head.position = Vec3(0.0, 0.0, 1.6);
  const PinholeCamera cam = test_camera();

  const auto frontal = score_view(surface, head, cam, camera_at_bearing(head, 0.0, 2.0));
  CHECK(std::abs(frontal.error) <= 0.02);
  CHECK(frontal.accuracy + frontal.error == 1.0);

  SUBCASE("antisymmetry over the sweep") {
    for (double deg = 10.0; deg <= 80.0; deg += 10.0) {
      const double b = deg * kPi / 180.0;
      const auto pos = score_view(surface, head, cam, camera_at_bearing(head, b, 2.0));
      const auto neg = score_view(surface, head, cam, camera_at_bearing(head, -b, 2.0));
      CHECK(std::abs(pos.error + neg.error) <= 0.02);
    }
  }

  SUBCASE("|error| nondecreasing over sampled bearings") {
    double prev = std::abs(frontal.error);
    for (double deg : {15.0, 30.0, 45.0, 60.0, 75.0}) {
      const double b = deg * kPi / 180.0;
      const auto s = score_view(surface, head, cam, camera_at_bearing(head, b, 2.0));
      CHECK(std::abs(s.error) >= prev);
      prev = std::abs(s.error);
    }
    SUBCASE("60 vs 30 strictly larger") {
      const auto s30 = score_view(surface, head, cam, camera_at_bearing(head, kPi / 6, 2.0));
      const auto s60 = score_view(surface, head, cam, camera_at_bearing(head, kPi / 3, 2.0));
      CHECK(std::abs(s60.error) > std::abs(s30.error));
    }
  }
}
