#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsim/config.hpp"
#include "fsim/io.hpp"
#include "fsim/sim.hpp"

namespace {

namespace fs = std::filesystem;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config file");
  cmd->add_option("--out", opts.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "override the scenario seed");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

fsim::ScenarioConfig load(const CommonOpts& opts) {
  fsim::ScenarioConfig config;
  if (!opts.config_path.empty()) {
    config = fsim::load_scenario(opts.config_path);
  }
  if (opts.seed >= 0) {
    config.seed = static_cast<std::uint64_t>(opts.seed);
  }
  return config;
}

std::ofstream open_out(const CommonOpts& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  const fs::path path = fs::path(opts.out_dir) / name;
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open output file " + path.string());
  }
  return f;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  return v;
}

int run_cmd(const CommonOpts& opts) {
  const fsim::ScenarioConfig config = load(opts);
  const fsim::RunLog log = fsim::run(config);
  if (opts.format == "json") {
    auto f = open_out(opts, "run.json");
    fsim::write_run_json(f, log);
  } else {
    {
      auto f = open_out(opts, "poses.csv");
      fsim::write_poses_csv(f, log);
    }
    {
      auto f = open_out(opts, "commands.csv");
      fsim::write_commands_csv(f, log);
    }
    {
      auto f = open_out(opts, "events.csv");
      fsim::write_events_csv(f, log);
    }
    {
      auto f = open_out(opts, "scores.csv");
      fsim::write_scores_csv(f, log);
    }
    {
      auto f = open_out(opts, "similarity.csv");
      fsim::write_similarity_csv(f, log);
    }
    {
      auto f = open_out(opts, "modes.csv");
      fsim::write_modes_csv(f, log);
    }
  }
  std::cout << "run: " << log.poses.size() - 1 << " steps, "
            << log.scores.size() << " face scores, final mode "
            << fsim::to_string(log.mode_transitions.back().mode) << "\n";
  return 0;
}

int sweep_cmd(const CommonOpts& opts, double range_lo, double range_hi,
              int range_n, double bearing_lo_deg, double bearing_hi_deg,
              int bearing_n, int samples) {
  const fsim::ScenarioConfig config = load(opts);
  const auto cells =
      fsim::sweep(config, linspace(bearing_lo_deg * kDegToRad,
                                   bearing_hi_deg * kDegToRad, bearing_n),
                  linspace(range_lo, range_hi, range_n), samples);
  if (opts.format == "json") {
    auto f = open_out(opts, "sweep.json");
    fsim::write_sweep_json(f, cells);
  } else {
    auto f = open_out(opts, "sweep.csv");
    fsim::write_sweep_csv(f, cells);
  }
  std::cout << "sweep: " << cells.size() << " cells\n";
  return 0;
}

int field_cmd(const CommonOpts& opts, double range_lo, double range_hi,
              int range_n, double bearing_lo_deg, double bearing_hi_deg,
              int bearing_n) {
  const fsim::ScenarioConfig config = load(opts);
  const auto cells = fsim::velocity_field(
      config,
      linspace(bearing_lo_deg * kDegToRad, bearing_hi_deg * kDegToRad, bearing_n),
      linspace(range_lo, range_hi, range_n));
  if (opts.format == "json") {
    auto f = open_out(opts, "field.json");
    fsim::write_field_json(f, cells);
  } else {
    auto f = open_out(opts, "field.csv");
    fsim::write_field_csv(f, cells);
  }
  std::cout << "field: " << cells.size() << " cells\n";
  return 0;
}

int calibrate_cmd(const CommonOpts& opts, const std::string& samples_path,
                  const std::string& model_kind) {
  std::ifstream f(samples_path);
  if (!f) {
    throw fsim::ConfigError("cannot open calibration CSV '" + samples_path + "'");
  }
  const auto samples = fsim::read_calibration_csv(f);
  const auto kind = model_kind == "inverse" ? fsim::DepthModelKind::Inverse
                                            : fsim::DepthModelKind::Linear;
  const fsim::DepthModel model = fsim::fit_depth_model(samples, kind);
  auto out = open_out(opts, "depth_model.csv");
  fsim::write_depth_model(out, model);
  std::cout << "calibrate: slope " << model.slope << ", intercept "
            << model.intercept << ", R^2 " << model.r_squared << " ("
            << samples.size() << " samples)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic UAV face-frontalization servoing simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  double range_lo = 1.5, range_hi = 5.0;
  double bearing_lo = -80.0, bearing_hi = 80.0;
  int range_n = 9, bearing_n = 9, samples = 5;
  std::string samples_path, model_kind = "linear";

  CLI::App* run = app.add_subcommand("run", "closed-loop simulation run");
  add_common(run, opts);

  CLI::App* sweep = app.add_subcommand("sweep", "static frontalization-score sweep");
  add_common(sweep, opts);
  sweep->add_option("--range-min", range_lo)->capture_default_str();
  sweep->add_option("--range-max", range_hi)->capture_default_str();
  sweep->add_option("--range-steps", range_n)->capture_default_str();
  sweep->add_option("--bearing-min-deg", bearing_lo)->capture_default_str();
  sweep->add_option("--bearing-max-deg", bearing_hi)->capture_default_str();
  sweep->add_option("--bearing-steps", bearing_n)->capture_default_str();
  sweep->add_option("--samples", samples, "face samples per cell")
      ->capture_default_str();

  CLI::App* field = app.add_subcommand("field", "open-loop velocity field grid");
  add_common(field, opts);
  field->add_option("--range-min", range_lo)->capture_default_str();
  field->add_option("--range-max", range_hi)->capture_default_str();
  field->add_option("--range-steps", range_n)->capture_default_str();
  field->add_option("--bearing-min-deg", bearing_lo)->capture_default_str();
  field->add_option("--bearing-max-deg", bearing_hi)->capture_default_str();
  field->add_option("--bearing-steps", bearing_n)->capture_default_str();

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "fit a depth model from a CSV of (height_px, distance_m)");
  add_common(calibrate, opts);
  calibrate->add_option("--samples", samples_path, "calibration CSV")->required();
  calibrate->add_option("--model", model_kind, "linear or inverse")
      ->check(CLI::IsMember({"linear", "inverse"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_cmd(opts);
    if (sweep->parsed()) {
      return sweep_cmd(opts, range_lo, range_hi, range_n, bearing_lo, bearing_hi,
                       bearing_n, samples);
    }
    if (field->parsed()) {
      return field_cmd(opts, range_lo, range_hi, range_n, bearing_lo, bearing_hi,
                       bearing_n);
    }
    if (calibrate->parsed()) return calibrate_cmd(opts, samples_path, model_kind);
  } catch (const fsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
