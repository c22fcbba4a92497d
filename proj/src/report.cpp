#include "vinenav/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "vinenav/errors.hpp"

namespace vinenav {

std::string format_number(double v) { return fmt::format("{}", v); }

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidInput("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw InvalidInput("trailing characters in integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("not an integer: '" + s + "'");
  }
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!next_line(in, line) || line != header) {
    throw InvalidInput(std::string("expected CSV header '") + header + "'");
  }
}

ArrivalRow parse_arrival_row(const std::string& line) {
  const auto f = split_csv(line);
  if (f.size() != 11) throw InvalidInput("arrival row needs 11 fields: '" + line + "'");
  return {to_int(f[0]),
          to_int(f[1]),
          {to_double(f[2]), to_double(f[3])},
          {to_double(f[4]), to_double(f[5])},
          to_double(f[6]),
          {to_double(f[7]), to_double(f[8])},
          to_double(f[9]),
          to_double(f[10])};
}

}  // namespace

void write_run_log(std::ostream& out, const TrialLog& log) {
  out << kRunLogHeader << '\n';
  for (const auto& t : log.ticks) {
    out << t.tick << ',' << t.state << ',' << t.target_id << ',' << format_number(t.pose.x) << ','
        << format_number(t.pose.y) << ',' << format_number(t.pose.heading) << '\n';
  }
}

std::vector<TickRecord> read_run_log(std::istream& in) {
  expect_header(in, kRunLogHeader);
  std::vector<TickRecord> out;
  std::string line;
  while (next_line(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw InvalidInput("run log row needs 6 fields: '" + line + "'");
    out.push_back({to_int(f[0]), f[1], to_int(f[2]), {to_double(f[3]), to_double(f[4]), to_double(f[5])}, {}});
  }
  return out;
}

void write_detections(std::ostream& out, const std::vector<TrunkDetection>& detections) {
  out << kDetectionHeader << '\n';
  for (const auto& d : detections) {
    out << d.frame_index << ',' << format_number(d.position.x) << ',' << format_number(d.position.y) << ','
        << format_number(d.range_m) << '\n';
  }
}

void write_arrival_rows(std::ostream& out, const std::vector<ArrivalRow>& rows) {
  out << kDetailHeader << '\n';
  for (const auto& r : rows) {
    out << r.trial << ',' << r.target_id << ',' << format_number(r.waypoint.x) << ',' << format_number(r.waypoint.y)
        << ',' << format_number(r.achieved.x) << ',' << format_number(r.achieved.y) << ','
        << format_number(r.error_m) << ',' << format_number(r.commanded.x) << ',' << format_number(r.commanded.y)
        << ',' << format_number(r.commanded_error_m) << ',' << format_number(r.trunk_distance_m) << '\n';
  }
}

std::vector<ArrivalRow> read_arrival_rows(std::istream& in) {
  expect_header(in, kDetailHeader);
  std::vector<ArrivalRow> rows;
  std::string line;
  while (next_line(in, line)) {
    if (!line.empty()) rows.push_back(parse_arrival_row(line));
  }
  return rows;
}

std::vector<ArrivalRow> arrival_rows(const TrialLog& log, ErrorReference ref) {
  return summarize({log}, ref).arrivals;
}

void write_summary(std::ostream& out, const ExperimentSummary& summary) {
  write_arrival_rows(out, summary.arrivals);
  int counted = 0;
  for (const auto& trial : summary.per_trial_errors) counted += static_cast<int>(trial.size());
  out << kAggregateHeader << '\n';
  out << counted << ',' << format_number(summary.mean_error_m) << ',' << format_number(summary.std_error_m) << ','
      << format_number(summary.std_sample_error_m) << ',' << format_number(summary.completion_rate) << '\n';
}

void export_summary(const ExperimentSummary& summary, const std::filesystem::path& path) {
  std::ostringstream ss;
  write_summary(ss, summary);
  write_text_file(path, ss.str());
}

ParsedSummary parse_summary(std::istream& in) {
  expect_header(in, kDetailHeader);
  ParsedSummary parsed;
  std::string line;
  bool aggregate_seen = false;
  while (next_line(in, line)) {
    if (line == kAggregateHeader) {
      aggregate_seen = true;
      break;
    }
    if (!line.empty()) parsed.rows.push_back(parse_arrival_row(line));
  }
  if (!aggregate_seen || !next_line(in, line)) throw InvalidInput("summary CSV is missing the aggregate block");
  const auto f = split_csv(line);
  if (f.size() != 5) throw InvalidInput("aggregate row needs 5 fields: '" + line + "'");
  parsed.aggregate = {to_double(f[1]), to_double(f[2]), to_double(f[3]), to_int(f[0])};
  parsed.completion_rate = to_double(f[4]);
  return parsed;
}

PlotScene plot_scene(const TrialLog& log) {
  PlotScene scene;
  scene.world = log.world;
  for (const auto& t : log.ticks) scene.path.push_back(t.pose);
  for (const auto& a : log.arrivals) {
    scene.waypoints.push_back(a.commanded.position);
    scene.achieved.push_back(a.achieved.position());
  }
  return scene;
}

std::string render_svg(const PlotScene& scene) {
  constexpr double kScale = 100.0;  // px per meter
  constexpr double kMargin = 0.5;   // m

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  auto extend = [&](Vec2 p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& t : scene.world.trunks) extend(t.position);
  for (const auto& p : scene.path) extend(p.position());
  for (const auto& w : scene.waypoints) extend(w);
  if (!std::isfinite(min_x)) min_x = min_y = max_x = max_y = 0.0;
  min_x -= kMargin;
  min_y -= kMargin;
  max_x += kMargin;
  max_y += kMargin;

  const double width = (max_x - min_x) * kScale;
  const double height = (max_y - min_y) * kScale;
  auto px = [&](double x) { return (x - min_x) * kScale; };
  auto py = [&](double y) { return (max_y - y) * kScale; };

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1f}\" height=\"{:.1f}\" viewBox=\"0 0 {:.1f} {:.1f}\">\n",
      width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& t : scene.world.trunks) {
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"6\" fill=\"{}\"/>\n", px(t.position.x),
                       py(t.position.y), t.side == Side::Left ? "#2e7d32" : "#6d4c41");
  }
  if (!scene.path.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < scene.path.size(); ++i) {
      if (i > 0) svg += ' ';
      svg += fmt::format("{:.2f},{:.2f}", px(scene.path[i].x), py(scene.path[i].y));
    }
    svg += "\"/>\n";
  }
  for (const auto& w : scene.waypoints) {
    const double cx = px(w.x), cy = py(w.y);
    svg += fmt::format("<path d=\"M{:.2f},{:.2f} L{:.2f},{:.2f} M{:.2f},{:.2f} L{:.2f},{:.2f}\" stroke=\"black\"/>\n",
                       cx - 5, cy - 5, cx + 5, cy + 5, cx - 5, cy + 5, cx + 5, cy - 5);
  }
  for (const auto& a : scene.achieved) {
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#c62828\"/>\n", px(a.x), py(a.y));
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace vinenav
