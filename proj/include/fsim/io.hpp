#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsim/sim.hpp"

// CSV/JSON export of run logs, sweep and field tables, visibility heatmaps,
// and the persisted depth-model record. Every CSV carries a header row
// naming columns and units.

namespace fsim {

void write_poses_csv(std::ostream& os, const RunLog& log);
void write_commands_csv(std::ostream& os, const RunLog& log);
void write_events_csv(std::ostream& os, const RunLog& log);
void write_scores_csv(std::ostream& os, const RunLog& log);
void write_similarity_csv(std::ostream& os, const RunLog& log);
void write_modes_csv(std::ostream& os, const RunLog& log);

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);
void write_field_csv(std::ostream& os, const std::vector<FieldCell>& cells);

/// Per-cell v(q) as (row, col, v) rows for external heatmap rendering.
void write_visibility_csv(std::ostream& os, const VisibilityMap& vis,
                          const ReferenceFaceSurface& surface);

/// Depth model record: kind, slope, intercept, hmin, hmax.
void write_depth_model(std::ostream& os, const DepthModel& model);
DepthModel read_depth_model(std::istream& is);

/// Calibration CSV: height_px, distance_m pairs (header row tolerated).
std::vector<DepthSample> read_calibration_csv(std::istream& is);

/// The full run log as one deterministic string (all tables concatenated);
/// also the determinism-check artifact.
std::string run_log_to_string(const RunLog& log);

void write_run_json(std::ostream& os, const RunLog& log);
void write_sweep_json(std::ostream& os, const std::vector<SweepCell>& cells);
void write_field_json(std::ostream& os, const std::vector<FieldCell>& cells);

}  // namespace fsim
