#include "fsim/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fsim {

namespace {

constexpr int kPrecision = 9;

std::ostream& prep(std::ostream& os) {
  os << std::setprecision(kPrecision);
  return os;
}

const char* kind_name(DetectionKind kind) {
  return kind == DetectionKind::Person ? "person" : "face";
}

const char* source_name(DetectionSource source) {
  return source == DetectionSource::Detector ? "detector" : "tracker";
}

double deg(double rad) { return rad * 180.0 / 3.14159265358979323846; }

}  // namespace

void write_poses_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,x_m,y_m,z_m,yaw_rad\n";
  for (const auto& p : log.poses) {
    os << p.t << ',' << p.position.x() << ',' << p.position.y() << ','
       << p.position.z() << ',' << p.yaw << '\n';
  }
}

void write_commands_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,mode,vx_mps,vy_mps,yaw_rate_radps,error,"
              "setpoint_x_m,setpoint_y_m,setpoint_yaw_rad\n";
  for (const auto& c : log.commands) {
    os << c.t << ',' << to_string(c.mode) << ',' << c.command.vx << ','
       << c.command.vy << ',' << c.command.yaw_rate << ',' << c.error << ','
       << c.setpoint.position.x() << ',' << c.setpoint.position.y() << ','
       << c.setpoint.yaw << '\n';
  }
}

void write_events_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,kind,source,cx_px,cy_px,w_px,h_px,error\n";
  for (const auto& e : log.events) {
    os << e.t << ',' << kind_name(e.event.kind) << ','
       << source_name(e.event.source) << ',' << e.event.box.center_u << ','
       << e.event.box.center_v << ',' << e.event.box.width << ','
       << e.event.box.height << ',' << e.error << '\n';
  }
}

void write_scores_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,error,accuracy\n";
  for (const auto& s : log.scores) {
    os << s.timestamp << ',' << s.error << ',' << s.accuracy << '\n';
  }
}

void write_similarity_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,similarity,bearing_deg,range_m\n";
  for (const auto& s : log.similarities) {
    os << s.timestamp << ',' << s.similarity << ',' << deg(s.bearing) << ','
       << s.range << '\n';
  }
}

void write_modes_csv(std::ostream& os, const RunLog& log) {
  prep(os) << "t_s,mode\n";
  for (const auto& m : log.mode_transitions) {
    os << m.t << ',' << to_string(m.mode) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  prep(os) << "bearing_deg,range_m,detections,mean_error,mean_accuracy\n";
  for (const auto& c : cells) {
    os << deg(c.bearing) << ',' << c.range << ',' << c.detections << ','
       << c.mean_error << ',' << c.mean_accuracy << '\n';
  }
}

void write_field_csv(std::ostream& os, const std::vector<FieldCell>& cells) {
  prep(os) << "bearing_deg,range_m,detecting,dead_zone,error,"
              "vx_mps,vy_mps,yaw_rate_radps\n";
  for (const auto& c : cells) {
    os << deg(c.bearing) << ',' << c.range << ',' << int(c.detecting) << ','
       << int(c.dead_zone) << ',' << c.error << ',' << c.command.vx << ','
       << c.command.vy << ',' << c.command.yaw_rate << '\n';
  }
}

void write_visibility_csv(std::ostream& os, const VisibilityMap& vis,
                          const ReferenceFaceSurface& surface) {
  prep(os) << "row,col,v\n";
  const auto& cells = surface.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    os << cells[k].row << ',' << cells[k].col << ',' << vis.values[k] << '\n';
  }
}

void write_depth_model(std::ostream& os, const DepthModel& model) {
  prep(os) << "kind,slope,intercept,hmin_px,hmax_px\n"
           << (model.kind == DepthModelKind::Inverse ? "inverse" : "linear")
           << ',' << model.slope << ',' << model.intercept << ','
           << model.height_min << ',' << model.height_max << '\n';
}

DepthModel read_depth_model(std::istream& is) {
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  DepthModel model;
  char comma;
  std::istringstream ss(line);
  std::string kind;
  if (!std::getline(ss, kind, ',') ||
      !(ss >> model.slope >> comma >> model.intercept >> comma >>
        model.height_min >> comma >> model.height_max)) {
    throw std::runtime_error("read_depth_model: malformed record");
  }
  if (kind == "inverse") {
    model.kind = DepthModelKind::Inverse;
  } else if (kind == "linear") {
    model.kind = DepthModelKind::Linear;
  } else {
    throw std::runtime_error("read_depth_model: unknown kind '" + kind + "'");
  }
  return model;
}

std::vector<DepthSample> read_calibration_csv(std::istream& is) {
  std::vector<DepthSample> samples;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double h, d;
    char comma;
    if (ss >> h >> comma >> d) {
      samples.emplace_back(h, d);
    }
    // Non-numeric lines (the header) are skipped.
  }
  return samples;
}

std::string run_log_to_string(const RunLog& log) {
  std::ostringstream ss;
  ss << "# poses\n";
  write_poses_csv(ss, log);
  ss << "# commands\n";
  write_commands_csv(ss, log);
  ss << "# events\n";
  write_events_csv(ss, log);
  ss << "# scores\n";
  write_scores_csv(ss, log);
  ss << "# similarity\n";
  write_similarity_csv(ss, log);
  ss << "# modes\n";
  write_modes_csv(ss, log);
  ss << "# ticks odometry=" << log.ticks.odometry << " images=" << log.ticks.images
     << " pedestrian=" << log.ticks.pedestrian << " tracker=" << log.ticks.tracker
     << " face=" << log.ticks.face << "\n";
  return ss.str();
}

void write_run_json(std::ostream& os, const RunLog& log) {
  nlohmann::json j;
  for (const auto& p : log.poses) {
    j["poses"].push_back({{"t", p.t},
                          {"x", p.position.x()},
                          {"y", p.position.y()},
                          {"z", p.position.z()},
                          {"yaw", p.yaw}});
  }
  for (const auto& c : log.commands) {
    j["commands"].push_back({{"t", c.t},
                             {"mode", to_string(c.mode)},
                             {"vx", c.command.vx},
                             {"vy", c.command.vy},
                             {"yaw_rate", c.command.yaw_rate}});
  }
  for (const auto& s : log.scores) {
    j["scores"].push_back(
        {{"t", s.timestamp}, {"error", s.error}, {"accuracy", s.accuracy}});
  }
  for (const auto& s : log.similarities) {
    j["similarity"].push_back({{"t", s.timestamp},
                               {"similarity", s.similarity},
                               {"bearing_deg", deg(s.bearing)},
                               {"range_m", s.range}});
  }
  for (const auto& m : log.mode_transitions) {
    j["modes"].push_back({{"t", m.t}, {"mode", to_string(m.mode)}});
  }
  j["ticks"] = {{"odometry", log.ticks.odometry},
                {"images", log.ticks.images},
                {"pedestrian", log.ticks.pedestrian},
                {"tracker", log.ticks.tracker},
                {"face", log.ticks.face}};
  os << j.dump(2) << '\n';
}

void write_sweep_json(std::ostream& os, const std::vector<SweepCell>& cells) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : cells) {
    j.push_back({{"bearing_deg", deg(c.bearing)},
                 {"range_m", c.range},
                 {"detections", c.detections},
                 {"mean_error", c.detections > 0 ? nlohmann::json(c.mean_error)
                                                 : nlohmann::json()},
                 {"mean_accuracy", c.detections > 0
                                       ? nlohmann::json(c.mean_accuracy)
                                       : nlohmann::json()}});
  }
  os << j.dump(2) << '\n';
}

void write_field_json(std::ostream& os, const std::vector<FieldCell>& cells) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : cells) {
    j.push_back({{"bearing_deg", deg(c.bearing)},
                 {"range_m", c.range},
                 {"detecting", c.detecting},
                 {"dead_zone", c.dead_zone},
                 {"error", c.detecting ? nlohmann::json(c.error) : nlohmann::json()},
                 {"vx", c.command.vx},
                 {"vy", c.command.vy},
                 {"yaw_rate", c.command.yaw_rate}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace fsim
