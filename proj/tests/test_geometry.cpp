#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsim/geometry.hpp"
#include "fsim/rng.hpp"

using namespace fsim;

namespace {
constexpr double kPi = std::numbers::pi;

PinholeCamera camera_f400() {
  PinholeCamera cam;
  cam.focal_px = 400.0;
  return cam;
}
}  // namespace

TEST_CASE("normalize_angle basics") {
  CHECK(normalize_angle(0.0) == doctest::Approx(0.0));
  CHECK(normalize_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
  CHECK_THROWS_AS(normalize_angle(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(normalize_angle(INFINITY), std::invalid_argument);
}

TEST_CASE("normalize_angle is idempotent and 2pi-periodic") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double theta = (rng.uniform() - 0.5) * 40.0;
    const double r = normalize_angle(theta);
    CHECK(r > -kPi);
    CHECK(r <= kPi);
    CHECK(normalize_angle(r) == doctest::Approx(r));
    CHECK(normalize_angle(theta + 2.0 * kPi) == doctest::Approx(r).epsilon(1e-9));
    // Congruent mod 2pi.
    CHECK(std::remainder(r - theta, 2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("project_point on the optical axis") {
  const PinholeCamera cam = camera_f400();
  const auto px = project_point(cam, Pose{}, Vec3(2.0, 0.0, 0.0));
  REQUIRE(px.has_value());
  CHECK(px->u == doctest::Approx(320.0));
  CHECK(px->v == doctest::Approx(184.0));
  CHECK(px->depth == doctest::Approx(2.0));
}

TEST_CASE("project_point rejects points behind the camera") {
  const PinholeCamera cam = camera_f400();
  CHECK_FALSE(project_point(cam, Pose{}, Vec3(-1.0, 0.0, 0.0)).has_value());
}

TEST_CASE("project_point offset from axis (u = f X / Z)") {
  const PinholeCamera cam = camera_f400();
  // 0.5 m to the camera's right (world -y at zero yaw) at 2 m depth.
  const auto px = project_point(cam, Pose{}, Vec3(2.0, -0.5, 0.0));
  REQUIRE(px.has_value());
  CHECK(px->u == doctest::Approx(320.0 + 100.0));
  CHECK(px->v == doctest::Approx(184.0));
  CHECK(px->depth == doctest::Approx(2.0));
}

TEST_CASE("project_point round-trips with the inverse ray") {
  const PinholeCamera cam = camera_f400();
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Pose pose;
    pose.position = Vec3(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform());
    pose.yaw = (rng.uniform() - 0.5) * 2.0 * kPi * 0.999;
    const Vec3 p = pose.position +
                   Vec3(std::cos(pose.yaw), std::sin(pose.yaw), 0.0) * (1.0 + 4.0 * rng.uniform()) +
                   Vec3(0.0, 0.0, rng.uniform() - 0.5);
    const auto px = project_point(cam, pose, p);
    if (!px) continue;
    const Vec3 recon = pose.position +
                       pixel_ray(cam, pose, px->u, px->v) *
                           (p - pose.position).norm();
    CHECK((recon - p).norm() < 1e-9);
  }
}

TEST_CASE("person_bbox centered and height from similar triangles") {
  PinholeCamera cam = camera_f400();
  HeadPose head;
  head.person_height = 1.8;
  head.head_height = 0.2;
  head.position = Vec3(3.0, 0.0, 1.7);  // crown at 1.8 m
  // Camera at mid-body height so the box is vertically centered.
  Pose pose;
  pose.position = Vec3(0.0, 0.0, 1.8 - 0.9);
  const auto box = person_bbox(cam, pose, head);
  REQUIRE(box.has_value());
  CHECK(box->center_u == doctest::Approx(320.0));
  CHECK(box->center_v == doctest::Approx(184.0));
  CHECK(box->height == doctest::Approx(400.0 * 1.8 / 3.0));
}

TEST_CASE("person_bbox empty behind the camera") {
  HeadPose head;
  head.position = Vec3(-2.0, 0.0, 1.6);
  CHECK_FALSE(person_bbox(camera_f400(), Pose{Vec3(0, 0, 1.0), 0.0}, head).has_value());
}

TEST_CASE("person_bbox height strictly decreases with range") {
  PinholeCamera cam = camera_f400();
  HeadPose head;
  double prev = 1e9;
  for (double d = 2.0; d <= 8.0; d += 0.5) {
    head.position = Vec3(d, 0.0, 1.6);
    const auto box = person_bbox(cam, Pose{Vec3(0, 0, 1.0), 0.0}, head);
    REQUIRE(box.has_value());
    CHECK(box->height < prev);
    prev = box->height;
  }
}

TEST_CASE("relative_bearing frontal, behind, and lateral") {
  HeadPose head;
  head.position = Vec3(0.0, 0.0, 1.6);
  head.facing = 0.0;

  const auto frontal = relative_bearing(Pose{Vec3(2.0, 0.0, 1.6), kPi}, head);
  CHECK(frontal.range == doctest::Approx(2.0));
  CHECK(frontal.bearing == doctest::Approx(0.0));

  const auto behind = relative_bearing(Pose{Vec3(-2.0, 0.0, 1.6), 0.0}, head);
  CHECK(behind.range == doctest::Approx(2.0));
  CHECK(std::abs(behind.bearing) == doctest::Approx(kPi));

  // 45 degrees to the person's right: facing +x means the right is -y.
  const auto right = relative_bearing(Pose{Vec3(1.0, -1.0, 1.6), 0.0}, head);
  CHECK(right.bearing == doctest::Approx(kPi / 4.0));
  CHECK(right.range == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("relative_bearing throws on coincident positions") {
  HeadPose head;
  head.position = Vec3(1.0, 2.0, 1.6);
  CHECK_THROWS_AS(relative_bearing(Pose{Vec3(1.0, 2.0, 0.3), 0.0}, head),
                  std::domain_error);
}

TEST_CASE("relative_bearing mirror antisymmetry") {
  HeadPose head;
  head.position = Vec3(0.5, -0.25, 1.6);
  head.facing = 0.7;
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double range = 1.0 + 4.0 * rng.uniform();
    const double bearing = (rng.uniform() - 0.5) * 1.9 * kPi;
    const double station = head.facing - bearing;
    const double mirrored_station = head.facing + bearing;
    Pose uav{head.position + range * Vec3(std::cos(station), std::sin(station), 0.0), 0.0};
    Pose mirrored{head.position + range * Vec3(std::cos(mirrored_station),
                                               std::sin(mirrored_station), 0.0),
                  0.0};
    const auto a = relative_bearing(uav, head);
    const auto b = relative_bearing(mirrored, head);
    CHECK(a.range == doctest::Approx(b.range));
    CHECK(a.bearing == doctest::Approx(-b.bearing).epsilon(1e-9));
  }
}

TEST_CASE("compose applies the mount offset in the body frame") {
  Pose body{Vec3(1.0, 2.0, 3.0), kPi / 2.0};
  Pose offset{Vec3(0.5, 0.0, -0.1), 0.1};
  const Pose cam = compose(body, offset);
  CHECK(cam.position.x() == doctest::Approx(1.0));
  CHECK(cam.position.y() == doctest::Approx(2.5));
  CHECK(cam.position.z() == doctest::Approx(2.9));
  CHECK(cam.yaw == doctest::Approx(kPi / 2.0 + 0.1));
}
