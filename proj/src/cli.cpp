#include "vinenav/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vinenav/report.hpp"
#include "vinenav/scenario_io.hpp"

namespace vinenav::cli {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() == '-') throw std::invalid_argument("negative");
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(origin + ": invalid seed '" + text + "'");
  }
}

std::string status_line(std::string_view status, int arrivals, const ErrorStats& stats) {
  return fmt::format("status={} arrivals={} mean_m={} std_m={}", status, arrivals, format_number(stats.mean),
                     format_number(stats.std_pop));
}

ErrorStats stats_of(const ExperimentSummary& s) {
  ErrorStats stats{s.mean_error_m, s.std_error_m, s.std_sample_error_m, 0};
  for (const auto& trial : s.per_trial_errors) stats.count += static_cast<int>(trial.size());
  return stats;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

std::string to_string_of(void (*writer)(std::ostream&, const TrialLog&), const TrialLog& log) {
  std::ostringstream ss;
  writer(ss, log);
  return ss.str();
}

int run_single(const CliConfig& config, std::ostream& out) {
  const TrialLog log = run_trial(config.scenario, 0);
  ensure_dir(config.output_dir);

  write_text_file(config.output_dir / "world.json", nlohmann::json(log.world).dump(2) + "\n");
  write_text_file(config.output_dir / "run_log.csv", to_string_of(write_run_log, log));
  {
    std::ostringstream ss;
    write_detections(ss, log.detections);
    write_text_file(config.output_dir / "detections.csv", ss.str());
  }
  FilterState final_state;
  final_state.clusters = log.final_clusters;
  write_text_file(config.output_dir / "filter.json", nlohmann::json(final_state).dump(2) + "\n");

  const auto summary = summarize({log}, config.scenario.error_reference);
  {
    std::ostringstream ss;
    write_arrival_rows(ss, summary.arrivals);
    write_text_file(config.output_dir / "arrivals.csv", ss.str());
  }
  if (config.emit_svg) write_text_file(config.output_dir / "trajectory.svg", render_svg(plot_scene(log)));

  out << status_line(status_name(log.status), summary.n_arrivals(), stats_of(summary)) << '\n';
  return exit_code_for(log.status);
}

int run_experiment_cmd(const CliConfig& config, std::ostream& out) {
  const auto logs = run_trials(config.scenario);
  const auto summary = summarize(logs, config.scenario.error_reference);
  ensure_dir(config.output_dir);
  export_summary(summary, config.output_dir / "summary.csv");
  if (config.emit_svg) {
    for (const auto& log : logs) {
      write_text_file(config.output_dir / fmt::format("trial_{:03d}.svg", log.trial_index),
                      render_svg(plot_scene(log)));
    }
  }
  // The first unfinished trial decides the reported status.
  TerminalStatus status = TerminalStatus::Done;
  for (const auto s : summary.statuses) {
    if (s != TerminalStatus::Done) {
      status = s;
      break;
    }
  }
  out << status_line(status_name(status), summary.n_arrivals(), stats_of(summary))
      << fmt::format(" completion_rate={}", format_number(summary.completion_rate)) << '\n';
  return exit_code_for(status);
}

int run_replay(const CliConfig& config, std::ostream& out) {
  const fs::path log_dir = config.log_dir.empty() ? config.output_dir : config.log_dir;
  PlotScene scene;
  try {
    scene.world = nlohmann::json::parse(read_text_file(log_dir / "world.json")).get<World>();
    std::istringstream run_log(read_text_file(log_dir / "run_log.csv"));
    for (const auto& t : read_run_log(run_log)) scene.path.push_back(t.pose);
    std::istringstream arrivals(read_text_file(log_dir / "arrivals.csv"));
    for (const auto& a : read_arrival_rows(arrivals)) {
      scene.waypoints.push_back(a.commanded);
      scene.achieved.push_back(a.achieved);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("replay: malformed world.json in '" + log_dir.string() + "': " + e.what());
  } catch (const InvalidInput& e) {
    throw IoError("replay: malformed log in '" + log_dir.string() + "': " + e.what());
  }
  ensure_dir(config.output_dir);
  write_text_file(config.output_dir / "trajectory.svg", render_svg(scene));
  out << fmt::format("status=ok ticks={} arrivals={}", scene.path.size(), scene.achieved.size()) << '\n';
  return kOk;
}

}  // namespace

int exit_code_for(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::Done: return kOk;
    case TerminalStatus::SearchFailed: return kSearchFailed;
    case TerminalStatus::TickBudgetExceeded: return kBudgetExceeded;
  }
  return kUsage;
}

std::optional<CliConfig> parse_args(const std::vector<std::string>& args, const char* env_seed, std::string* help) {
  CliConfig config;
  std::string side_text;
  std::string seed_text;
  std::string out_text = config.output_dir.string();
  std::string log_text;

  CLI::App app{"Vineyard row navigation simulator", "vinenav"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub, bool needs_scenario) {
    if (needs_scenario) {
      sub->add_option("--scenario", config.scenario_file, "Scenario JSON file")->required();
      sub->add_option("--side", side_text, "Work side: left or right");
      sub->add_option("--seed", seed_text, "Base seed (falls back to VINEYARD_NAV_SEED)");
      sub->add_option("--set", config.overrides, "Override key=value (dotted path), repeatable")
          ->allow_extra_args(false);
    } else {
      sub->add_option("--log", log_text, "Directory holding world.json, run_log.csv, arrivals.csv");
    }
    sub->add_option("--out", out_text, "Output directory");
    sub->add_flag("--svg", config.emit_svg, "Emit SVG plot(s)");
  };
  auto* run = app.add_subcommand("run", "Run one trial and write its logs");
  auto* experiment = app.add_subcommand("experiment", "Run all trials and write summary.csv");
  auto* replay = app.add_subcommand("replay", "Re-render an existing trial log to SVG");
  add_common(run, true);
  add_common(experiment, true);
  add_common(replay, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  config.output_dir = out_text;
  config.log_dir = log_text;
  if (run->parsed()) config.subcommand = Subcommand::Run;
  if (experiment->parsed()) config.subcommand = Subcommand::Experiment;
  if (replay->parsed()) {
    config.subcommand = Subcommand::Replay;
    return config;
  }

  if (!side_text.empty()) {
    if (side_text == "left") {
      config.side = Side::Left;
    } else if (side_text == "right") {
      config.side = Side::Right;
    } else {
      throw UsageError("--side: expected 'left' or 'right', got '" + side_text + "'");
    }
  }
  if (!seed_text.empty()) {
    config.seed = parse_seed(seed_text, "--seed");
  } else if (env_seed != nullptr && *env_seed != '\0') {
    config.seed = parse_seed(env_seed, "VINEYARD_NAV_SEED");
  }

  if (!fs::exists(config.scenario_file)) {
    throw UsageError("--scenario: file not found '" + config.scenario_file + "'");
  }
  std::vector<std::string> overrides = config.overrides;
  if (config.side) overrides.push_back(std::string("nav.work_side=\"") + std::string(side_name(*config.side)) + "\"");
  if (config.seed) overrides.push_back("base_seed=" + std::to_string(*config.seed));
  try {
    config.scenario = load_scenario(config.scenario_file, overrides);
  } catch (const NavError& e) {
    throw UsageError(e.what());
  }
  return config;
}

int execute(const CliConfig& config, std::ostream& out) {
  switch (config.subcommand) {
    case Subcommand::Run: return run_single(config, out);
    case Subcommand::Experiment: return run_experiment_cmd(config, out);
    case Subcommand::Replay: return run_replay(config, out);
  }
  return kUsage;
}

int main(const std::vector<std::string>& args, const char* env_seed, std::ostream& out, std::ostream& err) {
  try {
    std::string help;
    const auto config = parse_args(args, env_seed, &help);
    if (!config) {
      err << help;
      out << "status=help\n";
      return kOk;
    }
    return execute(*config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    out << "status=usage_error\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    out << "status=io_error\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << "status=usage_error\n";
    return kUsage;
  }
}

}  // namespace vinenav::cli
