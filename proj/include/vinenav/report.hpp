// On-disk artifacts: run log, detection log and summary CSVs, plus the SVG
// trajectory plot. Numbers are written in shortest round-trip form so output
// is byte-stable and parses back exactly.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vinenav/harness.hpp"

namespace vinenav {

inline constexpr const char* kRunLogHeader = "tick,state_name,target_id,x,y,theta";
inline constexpr const char* kDetectionHeader = "frame,trunk_guess_x,trunk_guess_y,range";
inline constexpr const char* kDetailHeader =
    "trial,target_id,wp_x,wp_y,ach_x,ach_y,err_m,cmd_x,cmd_y,cmd_err_m,trunk_dist_m";
inline constexpr const char* kAggregateHeader = "n_arrivals,mean_m,std_pop_m,std_sample_m,completion_rate";

std::string format_number(double v);

void write_run_log(std::ostream& out, const TrialLog& log);
std::vector<TickRecord> read_run_log(std::istream& in);

void write_detections(std::ostream& out, const std::vector<TrunkDetection>& detections);

void write_arrival_rows(std::ostream& out, const std::vector<ArrivalRow>& rows);
std::vector<ArrivalRow> read_arrival_rows(std::istream& in);

/// Arrival rows of one trial, scored with `ref`.
std::vector<ArrivalRow> arrival_rows(const TrialLog& log, ErrorReference ref);

/// Detail block (one row per arrival) followed by the aggregate block.
void write_summary(std::ostream& out, const ExperimentSummary& summary);

/// Throws IoError with the path on failure.
void export_summary(const ExperimentSummary& summary, const std::filesystem::path& path);

struct ParsedSummary {
  std::vector<ArrivalRow> rows;
  ErrorStats aggregate;
  double completion_rate{0.0};
};

ParsedSummary parse_summary(std::istream& in);

struct PlotScene {
  World world;
  std::vector<Pose> path;
  std::vector<Vec2> waypoints;
  std::vector<Vec2> achieved;
};

PlotScene plot_scene(const TrialLog& log);

std::string render_svg(const PlotScene& scene);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace vinenav
