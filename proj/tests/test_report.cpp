#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "vinenav/errors.hpp"
#include "vinenav/report.hpp"

using namespace vinenav;

namespace {

ExperimentSummary two_trial_summary() {
  ExperimentSummary s;
  s.n_trials = 2;
  s.statuses = {TerminalStatus::Done, TerminalStatus::Done};
  s.arrivals = {
      {0, 3, {0.0, 0.8}, {0.004, 0.797}, 0.005, {0.001, 0.8}, 0.0042, 0.797},
      {1, 1, {0.8, 0.8}, {0.81, 0.8}, 0.01, {0.8, 0.81}, 0.0141, 0.8001},
  };
  s.per_trial_errors = {{0.005}, {0.01}};
  const auto stats = error_stats({0.005, 0.01});
  s.mean_error_m = stats.mean;
  s.std_error_m = stats.std_pop;
  s.std_sample_error_m = stats.std_sample;
  s.completion_rate = 1.0;
  return s;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("summary csv: detail rows then aggregate row") {
  std::ostringstream out;
  write_summary(out, two_trial_summary());
  const std::string text = out.str();
  // detail header + 2 rows + aggregate header + 1 row
  CHECK(count_lines(text) == 5);
  CHECK(text.rfind(kDetailHeader, 0) == 0);
  CHECK(text.find(std::string(kAggregateHeader) + "\n2,0.0075,") != std::string::npos);
}

TEST_CASE("summary csv round trip is exact") {
  const auto s = two_trial_summary();
  std::stringstream io;
  write_summary(io, s);
  const auto parsed = parse_summary(io);
  CHECK(parsed.rows == s.arrivals);
  CHECK(parsed.aggregate.count == 2);
  CHECK(std::abs(parsed.aggregate.mean - s.mean_error_m) < 1e-9);
  CHECK(std::abs(parsed.aggregate.std_pop - s.std_error_m) < 1e-9);
  CHECK(std::abs(parsed.aggregate.std_sample - s.std_sample_error_m) < 1e-9);
  CHECK(parsed.completion_rate == 1.0);
}

TEST_CASE("summary csv round trip of a real experiment") {
  Scenario sc;
  sc.n_trials = 2;
  sc.robot.actuation_noise_std = 0.01;
  const auto s = run_experiment(sc);
  std::stringstream io;
  write_summary(io, s);
  const auto parsed = parse_summary(io);
  REQUIRE(parsed.rows.size() == s.arrivals.size());
  for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
    CHECK(std::abs(parsed.rows[i].error_m - s.arrivals[i].error_m) < 1e-9);
    CHECK(std::abs(parsed.rows[i].achieved.x - s.arrivals[i].achieved.x) < 1e-9);
  }
  CHECK(std::abs(parsed.aggregate.mean - s.mean_error_m) < 1e-9);
}

TEST_CASE("empty summary flags zero arrivals") {
  ExperimentSummary s;
  s.n_trials = 1;
  s.per_trial_errors = {{}};
  std::stringstream io;
  write_summary(io, s);
  CHECK(io.str().find(std::string(kAggregateHeader) + "\n0,0,0,0,0\n") != std::string::npos);
  const auto parsed = parse_summary(io);
  CHECK(parsed.rows.empty());
  CHECK(parsed.aggregate.count == 0);
  CHECK(parsed.aggregate.mean == 0.0);
}

TEST_CASE("malformed summary is rejected") {
  std::istringstream no_header("a,b,c\n");
  CHECK_THROWS_AS(parse_summary(no_header), InvalidInput);
  std::istringstream truncated(std::string(kDetailHeader) + "\n0,1,2\n");
  CHECK_THROWS_AS(parse_summary(truncated), InvalidInput);
}

TEST_CASE("export_summary reports the failing path") {
  const auto s = two_trial_summary();
  try {
    export_summary(s, "/nonexistent/dir/summary.csv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/summary.csv") != std::string::npos);
  }
  const auto path = std::filesystem::temp_directory_path() / "vinenav_summary_test.csv";
  export_summary(s, path);
  std::istringstream in(read_text_file(path));
  CHECK(parse_summary(in).rows.size() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("run log round trip") {
  Scenario sc;
  sc.camera.position_noise_std_m = 0.0;
  const auto log = run_trial(sc, 0);
  std::stringstream io;
  write_run_log(io, log);
  const auto back = read_run_log(io);
  REQUIRE(back.size() == log.ticks.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].tick == log.ticks[i].tick);
    CHECK(back[i].state == log.ticks[i].state);
    CHECK(back[i].target_id == log.ticks[i].target_id);
    CHECK(back[i].pose == log.ticks[i].pose);
  }
}

TEST_CASE("detection csv schema") {
  std::ostringstream out;
  write_detections(out, {{{1.5, -0.25}, 3, 1.75, 0}});
  CHECK(out.str() == "frame,trunk_guess_x,trunk_guess_y,range\n3,1.5,-0.25,1.75\n");
}

TEST_CASE("svg rendering is well formed and deterministic") {
  Scenario sc;
  sc.camera.position_noise_std_m = 0.0;
  const auto log = run_trial(sc, 0);
  const auto svg = render_svg(plot_scene(log));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  CHECK(circles == log.world.trunks.size() + log.arrivals.size());
  CHECK(render_svg(plot_scene(run_trial(sc, 0))) == svg);

  const auto empty = render_svg(PlotScene{});
  CHECK(empty.find("</svg>") != std::string::npos);
}
