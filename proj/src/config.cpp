#include "fsim/config.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "fsim/io.hpp"

namespace fsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: key '" + key + "' expects true/false, got '" + value + "'");
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

ScenarioConfig parse_scenario(std::istream& is) {
  ScenarioConfig c;
  std::string calibration_file;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto num = [](double& field) {
    return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
  };
  auto angle_deg = [](double& field) {
    return [&field](const std::string& k, const std::string& v) {
      field = to_double(k, v) * kDegToRad;
    };
  };
  auto integer = [](int& field) {
    return [&field](const std::string& k, const std::string& v) {
      field = static_cast<int>(std::lround(to_double(k, v)));
    };
  };

  std::map<std::string, Setter> keys = {
      {"person.x", num(c.person.position.x())},
      {"person.y", num(c.person.position.y())},
      {"person.z", num(c.person.position.z())},
      {"person.facing_deg", angle_deg(c.person.facing)},
      {"person.head_height", num(c.person.head_height)},
      {"person.person_height", num(c.person.person_height)},
      {"uav.x", num(c.uav_start.position.x())},
      {"uav.y", num(c.uav_start.position.y())},
      {"uav.z", num(c.uav_start.position.z())},
      {"uav.yaw_deg", angle_deg(c.uav_start.yaw)},
      {"rates.onboard_images_hz", num(c.rates.onboard_images_hz)},
      {"rates.odometry_hz", num(c.rates.odometry_hz)},
      {"rates.pedestrian_hz", num(c.rates.pedestrian_hz)},
      {"rates.tracker_hz", num(c.rates.tracker_hz)},
      {"rates.face_hz", num(c.rates.face_hz)},
      {"noise.center_sigma_px", num(c.noise.center_sigma_px)},
      {"noise.height_sigma_frac", num(c.noise.height_sigma_frac)},
      {"noise.false_negative_prob", num(c.noise.false_negative_prob)},
      {"gains.kp_forward", num(c.gains.forward.kp)},
      {"gains.kd_forward", num(c.gains.forward.kd)},
      {"gains.kp_lateral", num(c.gains.lateral.kp)},
      {"gains.kd_lateral", num(c.gains.lateral.kd)},
      {"gains.kp_yaw", num(c.gains.yaw.kp)},
      {"gains.kd_yaw", num(c.gains.yaw.kd)},
      {"gains.max_speed", num(c.gains.max_speed)},
      {"gains.max_yaw_rate", num(c.gains.max_yaw_rate)},
      {"orbit.arc_gain", num(c.orbit.arc_gain)},
      {"orbit.max_arc_step", num(c.orbit.max_arc_step)},
      {"orbit.dead_zone_error", num(c.orbit.dead_zone_error)},
      {"orbit.dead_zone_range_band", num(c.orbit.dead_zone_range_band)},
      {"orbit.standoff", num(c.orbit.standoff)},
      {"orbit.radial_contraction", num(c.orbit.radial_contraction)},
      {"embedding.dim", integer(c.embedding.dim)},
      {"embedding.angle_gain", num(c.embedding.angle_gain)},
      {"embedding.range_gain", num(c.embedding.range_gain)},
      {"embedding.range_ref", num(c.embedding.range_ref)},
      {"embedding.range_scale", num(c.embedding.range_scale)},
      {"embedding.noise_sigma", num(c.embedding.noise_sigma)},
      {"camera.focal_px", num(c.camera.focal_px)},
      {"camera.width_px", integer(c.camera.width_px)},
      {"camera.height_px", integer(c.camera.height_px)},
      {"camera.mount_x", num(c.camera.mount.position.x())},
      {"camera.mount_y", num(c.camera.mount.position.y())},
      {"camera.mount_z", num(c.camera.mount.position.z())},
      {"camera.mount_yaw_deg", angle_deg(c.camera.mount.yaw)},
      {"sim.duration", num(c.duration)},
      {"sim.dt", num(c.dt)},
      {"sim.face_dropout", num(c.face_dropout)},
      {"sim.raster_resolution", integer(c.raster_resolution)},
      {"vehicle.tau", num(c.vehicle.tau)},
  };

  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value, got '" + line + "'");
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "sim.seed") {
      try {
        c.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ConfigError("config: sim.seed expects an unsigned integer, got '" + value + "'");
      }
    } else if (key == "sim.depth_model") {
      if (value == "linear") {
        c.depth_model = DepthModelKind::Linear;
      } else if (value == "inverse") {
        c.depth_model = DepthModelKind::Inverse;
      } else {
        throw ConfigError("config: sim.depth_model must be linear or inverse");
      }
    } else if (key == "sim.calibration_file") {
      calibration_file = value;
    } else if (key == "embedding.range_terms") {
      c.embedding.range_terms = to_bool(key, value);
    } else if (auto it = keys.find(key); it != keys.end()) {
      it->second(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }

  if (!calibration_file.empty()) {
    std::ifstream f(calibration_file);
    if (!f) {
      throw ConfigError("config: cannot open calibration file '" + calibration_file + "'");
    }
    c.calibration = read_calibration_csv(f);
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_scenario(f);
}

}  // namespace fsim
