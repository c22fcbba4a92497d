// Acceptance checks for the navigation stack. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "vinenav/errors.hpp"
#include "vinenav/filter.hpp"
#include "vinenav/harness.hpp"
#include "vinenav/perception.hpp"
#include "vinenav/planner.hpp"
#include "vinenav/report.hpp"
#include "vinenav/robot.hpp"
#include "vinenav/row_geometry.hpp"
#include "vinenav/state_machine.hpp"

using namespace vinenav;

namespace {

struct Verdict {
  bool pass{true};
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scenario calibrated() {
  Scenario s;
  s.world.trunks_per_row = 5;
  s.world.trunk_spacing_m = 0.8;
  s.camera.position_noise_std_m = 0.02;
  s.robot.actuation_noise_std = 0.01;
  s.n_trials = 10;
  s.base_seed = 1;
  return s;
}

Scenario zero_noise() {
  Scenario s = calibrated();
  s.camera.position_noise_std_m = 0.0;
  s.robot.actuation_noise_std = 0.0;
  return s;
}

Verdict calibrated_experiment() {
  const auto t0 = Clock::now();
  const auto summary = run_experiment(calibrated());
  const double dt = seconds_since(t0);
  Verdict v;
  const bool all_done = std::all_of(summary.statuses.begin(), summary.statuses.end(),
                                    [](TerminalStatus s) { return s == TerminalStatus::Done; });
  v.pass = all_done && summary.mean_error_m >= 0.005 && summary.mean_error_m <= 0.06 && dt <= 10.0;
  v.detail = fmt::format("done={}/{} arrivals={} mean_m={:.4f} std_m={:.4f} runtime_s={:.2f}",
                         std::count(summary.statuses.begin(), summary.statuses.end(), TerminalStatus::Done),
                         summary.n_trials, summary.n_arrivals(), summary.mean_error_m, summary.std_error_m, dt);
  return v;
}

Verdict zero_noise_loop() {
  const Scenario s = zero_noise();
  const auto t0 = Clock::now();
  const auto logs = run_trials(s);
  const double dt = seconds_since(t0);
  Verdict v;
  double worst = 0.0;
  for (const auto& log : logs) {
    if (log.status != TerminalStatus::Done || log.arrivals.size() != 5) v.pass = false;
    double last_along = -std::numeric_limits<double>::infinity();
    const Vec2 axis = unit_from_angle(log.world.heading);
    for (const auto& a : log.arrivals) {
      worst = std::max({worst, a.commanded_error_m, a.true_error_m});
      if (!(a.commanded_error_m <= s.nav.arrival_pos_tol_m) || !(a.true_error_m <= s.nav.arrival_pos_tol_m)) {
        v.pass = false;
      }
      if (a.truth_trunk_id < 0) {
        v.pass = false;
        continue;
      }
      const double along = dot(log.world.trunks[a.truth_trunk_id].position, axis);
      if (along <= last_along) v.pass = false;
      last_along = along;
    }
  }
  if (dt > 2.0) v.pass = false;
  v.detail = fmt::format("trials={} worst_err_m={:.5f} runtime_s={:.2f}", logs.size(), worst, dt);
  return v;
}

Verdict noise_monotonicity() {
  const std::vector<double> sigmas{0.0, 0.01, 0.02, 0.04};
  std::vector<double> means, ses;
  for (double sigma : sigmas) {
    Scenario s = calibrated();
    s.n_trials = 20;
    s.camera.position_noise_std_m = sigma;
    const auto summary = run_experiment(s);
    means.push_back(summary.mean_error_m);
    ses.push_back(summary.n_arrivals() > 0 ? summary.std_sample_error_m / std::sqrt(summary.n_arrivals()) : 0.0);
  }
  Verdict v;
  int inversions = 0;
  for (std::size_t i = 0; i + 1 < means.size(); ++i) {
    if (means[i + 1] < means[i]) {
      ++inversions;
      if (means[i] - means[i + 1] > std::hypot(ses[i], ses[i + 1])) v.pass = false;
    }
  }
  if (inversions > 1) v.pass = false;
  v.detail = fmt::format("means_m=[{:.4f},{:.4f},{:.4f},{:.4f}] inversions={}", means[0], means[1], means[2],
                         means[3], inversions);
  return v;
}

Verdict filter_oracle() {
  Verdict v;
  double worst = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> per_frame(0, 6);
  for (int seq = 0; seq < 50; ++seq) {
    FilterConfig cfg;
    if (seq % 2 == 1) cfg.gate_radius_m = 0.25;
    FilterState state;
    std::map<int, std::vector<Vec2>> assigned;
    for (int frame = 0; frame < 30; ++frame) {
      std::vector<TrunkDetection> dets;
      const int n = per_frame(rng);
      for (int i = 0; i < n; ++i) dets.push_back({{coord(rng), coord(rng)}, frame, 1.0, -1});
      state = ingest(std::move(state), dets, cfg);
      for (std::size_t i = 0; i < dets.size(); ++i) assigned[state.last_assignment[i]].push_back(dets[i].position);
    }
    for (const auto& c : state.clusters) {
      const auto batch = oracle::centroid(assigned[c.cluster_id]);
      worst = std::max(worst, distance(batch, c.mean_position));
      if (static_cast<std::size_t>(c.observation_count) != assigned[c.cluster_id].size()) v.pass = false;
    }
  }
  if (worst > 1e-9) v.pass = false;

  // Well-separated trunks plus sparse false positives: exactly one confirmed
  // cluster per trunk.
  int count_failures = 0;
  for (int seq = 0; seq < 50; ++seq) {
    const FilterConfig cfg;
    const double sigma = 0.02;
    const double spacing = 2.0 * cfg.gate_radius_m + 6.0 * sigma + 0.05;
    std::vector<Vec2> trunks;
    for (int i = 0; i < 5; ++i) trunks.push_back({spacing * i, 0.0});
    std::normal_distribution<double> noise(0.0, sigma);
    std::uniform_real_distribution<double> fx(-2.0, spacing * 4 + 2.0), fy(-3.0, 3.0);
    FilterState state;
    for (int frame = 0; frame < 20; ++frame) {
      std::vector<TrunkDetection> dets;
      for (const auto& t : trunks) dets.push_back({{t.x + noise(rng), t.y + noise(rng)}, frame, 1.0, 0});
      if (frame % 4 == 0) dets.push_back({{fx(rng), fy(rng)}, frame, 1.0, -1});
      std::shuffle(dets.begin(), dets.end(), rng);
      state = ingest(std::move(state), dets, cfg);
    }
    if (confirmed_trunks(state, cfg).size() != trunks.size()) ++count_failures;
  }
  if (count_failures > 0) v.pass = false;
  v.detail = fmt::format("sequences=50 worst_mean_dev={:.2e} count_failures={}/50", worst, count_failures);
  return v;
}

Verdict row_fit_accuracy() {
  Verdict v;
  int within = 0;
  double worst_exact = 0.0;
  const double two_deg = 2.0 * std::numbers::pi / 180.0;
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> lateral(0.0, 0.02);
    const double truth = ang(rng);
    const Vec2 dir = unit_from_angle(truth);
    const Vec2 normal = left_normal(dir);
    const Vec2 origin{ang(rng), ang(rng)};
    std::vector<Vec2> noisy, exact;
    for (int i = 0; i < 5; ++i) {
      const Vec2 p = origin + dir * (0.8 * i);
      exact.push_back(p);
      noisy.push_back(p + normal * lateral(rng));
    }
    if (oracle::line_angle_diff(fit_row(noisy, truth).heading(), truth) <= two_deg) ++within;
    worst_exact = std::max(worst_exact, oracle::line_angle_diff(fit_row(exact, truth).heading(), truth));
  }
  v.pass = within >= 190 && worst_exact <= 1e-9;
  v.detail = fmt::format("within_2deg={}/200 zero_noise_worst_rad={:.2e}", within, worst_exact);
  return v;
}

Verdict planner_geometry() {
  Verdict v;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coord(-10.0, 10.0), ang(-std::numbers::pi, std::numbers::pi),
      standoff(0.1, 2.0);
  double worst_dist = 0.0, worst_perp = 0.0;
  int argmin_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    const TrunkCluster trunk{i, {coord(rng), coord(rng)}, 3, 0};
    const RowModel row{unit_from_angle(ang(rng)), {coord(rng), coord(rng)}, Side::Right, {}};
    PlanState plan;
    plan.standoff_m = standoff(rng);
    plan.work_side = i % 2 == 0 ? Side::Right : Side::Left;
    const auto wp = waypoint_for(trunk, row, plan);
    const Vec2 offset = wp.position - trunk.mean_position;
    worst_dist = std::max(worst_dist, std::abs(norm(offset) - plan.standoff_m));
    worst_perp = std::max(worst_perp, std::abs(dot(offset, row.direction)));

    // Brute-force nearest unvisited target, lowest id on ties.
    std::vector<TrunkCluster> clusters;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      // Coarse lattice so equal distances actually occur.
      clusters.push_back({k, {static_cast<double>(rng() % 5), static_cast<double>(rng() % 5)}, 3, 0});
    }
    PlanState p2;
    for (int k = 0; k < n; ++k) {
      if (rng() % 3 != 0) p2.unvisited.insert(k);
    }
    const Pose pose{static_cast<double>(rng() % 5), static_cast<double>(rng() % 5), 0.0};
    std::optional<int> expect;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : clusters) {
      if (!p2.unvisited.count(c.cluster_id)) continue;
      const double d = distance(c.mean_position, pose.position());
      if (d < best) {
        best = d;
        expect = c.cluster_id;
      }
    }
    const auto got = next_target(pose, clusters, p2);
    const std::optional<int> got_id = got ? std::optional<int>(got->cluster_id) : std::nullopt;
    if (got_id != expect) ++argmin_mismatch;
  }
  v.pass = worst_dist <= 1e-9 && worst_perp <= 1e-9 && argmin_mismatch == 0;
  v.detail = fmt::format("cases=1000 worst_dist_err={:.2e} worst_perp={:.2e} argmin_mismatch={}", worst_dist,
                         worst_perp, argmin_mismatch);
  return v;
}

std::string experiment_bytes(const Scenario& s) {
  const auto logs = run_trials(s);
  std::ostringstream out;
  write_summary(out, summarize(logs, s.error_reference));
  for (const auto& log : logs) {
    write_run_log(out, log);
    write_detections(out, log.detections);
    out << render_svg(plot_scene(log));
  }
  return out.str();
}

Verdict determinism() {
  Scenario s = calibrated();
  s.camera.false_positive_rate = 0.1;
  const auto a = experiment_bytes(s);
  const auto b = experiment_bytes(s);
  Verdict v;
  v.pass = a == b && !a.empty();
  v.detail = fmt::format("bytes={} identical={}", a.size(), a == b);
  return v;
}

VelocityCommand to_velocity(const NavCommand& cmd, const Pose& pose, const RobotConfig& robot) {
  if (const auto* r = std::get_if<nav::RotateInPlace>(&cmd)) return clamp_command({0.0, 0.0, r->yaw_rate}, robot);
  if (const auto* t = std::get_if<nav::Track>(&cmd)) return track(pose, t->waypoint, robot);
  return {};
}

bool same_result(const StepResult& a, const StepResult& b) {
  return a.state == b.state && a.command == b.command && a.plan == b.plan && a.rows == b.rows &&
         a.arrival == b.arrival;
}

bool valid_successor(const NavState& from, const StepResult& r) {
  const bool paused_or_done =
      std::holds_alternative<nav::TaskPause>(r.state) || std::holds_alternative<nav::Done>(r.state);
  if (paused_or_done && !std::holds_alternative<nav::Stop>(r.command)) return false;
  if (std::holds_alternative<nav::Done>(from) && !std::holds_alternative<nav::Done>(r.state)) return false;
  if (const auto* p = std::get_if<nav::TaskPause>(&r.state); p && p->remaining < 1) return false;
  if (const auto* a = std::get_if<nav::Approach>(&r.state)) {
    if (!std::isfinite(a->waypoint.position.x) || !std::isfinite(a->waypoint.position.y)) return false;
    if (!std::holds_alternative<nav::Track>(r.command)) return false;
  }
  if (r.arrival && !std::holds_alternative<nav::TaskPause>(r.state)) return false;
  return true;
}

// Replays the zero-noise 2-trunk closed loop step by step. At every reachable
// (state, inputs) pair the transition must be pure and yield a valid
// successor; Done must be absorbing and reached within the tick budget.
Verdict state_machine_totality() {
  Scenario s = zero_noise();
  s.world.trunks_per_row = 2;
  s.n_trials = 1;
  const auto reference = run_trial(s, 0);

  const World world = build_world(s);
  auto sensor_rng = trial_rng(s.base_seed, 0, 1);
  auto actuation_rng = trial_rng(s.base_seed, 0, 2);
  Pose pose = s.start_pose;
  FilterState filter;
  NavState state = nav::InitialSearch{};
  RowPair rows;
  PlanState plan;
  plan.standoff_m = s.plan_standoff_m;
  plan.work_side = s.nav.work_side;

  Verdict v;
  std::map<std::string, int> visited_states;
  int impure = 0, invalid = 0, ticks = 0;
  bool reached_done = false;
  for (int tick = 0; tick < s.max_ticks; ++tick) {
    const auto dets = sense(world, pose, s.camera, sensor_rng, tick);
    filter = ingest(std::move(filter), dets, s.filter);
    const NavInputs inputs{pose, confirmed_trunks(filter, s.filter), rows, plan};
    StepResult r, again;
    try {
      r = step(state, inputs, s.nav);
      again = step(state, inputs, s.nav);
    } catch (const NavError& e) {
      v.pass = false;
      v.detail = fmt::format("step threw at tick {} in {}: {}", tick, state_name(state), e.what());
      return v;
    }
    ++visited_states[std::string(state_name(state))];
    if (!same_result(r, again)) ++impure;
    if (!valid_successor(state, r)) ++invalid;
    const VelocityCommand cmd = to_velocity(r.command, pose, s.robot);
    if (tick >= static_cast<int>(reference.ticks.size()) || reference.ticks[tick].pose != pose ||
        reference.ticks[tick].command != cmd) {
      v.pass = false;
      v.detail = fmt::format("replay diverged from run_trial at tick {}", tick);
      return v;
    }
    state = r.state;
    plan = r.plan;
    rows = r.rows;
    ticks = tick + 1;
    if (std::holds_alternative<nav::Done>(state)) {
      reached_done = true;
      // Absorption: Done must stay Done with Stop under fresh inputs.
      const NavInputs after{pose, confirmed_trunks(filter, s.filter), rows, plan};
      for (int k = 0; k < 10; ++k) {
        const auto d = step(state, after, s.nav);
        if (!std::holds_alternative<nav::Done>(d.state) || !std::holds_alternative<nav::Stop>(d.command)) ++invalid;
      }
      break;
    }
    pose = step_dynamics(pose, cmd, s.robot, actuation_rng);
  }
  const char* required[] = {"InitialSearch", "FitRows", "Replan", "Approach", "TaskPause"};
  int missing = 0;
  for (const char* name : required) missing += visited_states.count(name) ? 0 : 1;
  v.pass = reached_done && impure == 0 && invalid == 0 && missing == 0 && reference.status == TerminalStatus::Done;
  v.detail = fmt::format("ticks={}/{} states_seen={} impure={} invalid={} arrivals={}", ticks, s.max_ticks,
                         visited_states.size() + (reached_done ? 1 : 0), impure, invalid, reference.arrivals.size());
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"calibrated_noise_experiment", calibrated_experiment},
      {"zero_noise_closed_loop", zero_noise_loop},
      {"noise_monotonicity", noise_monotonicity},
      {"filter_oracle_equivalence", filter_oracle},
      {"row_fit_accuracy", row_fit_accuracy},
      {"planner_geometry", planner_geometry},
      {"determinism", determinism},
      {"state_machine_totality", state_machine_totality},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    fmt::print("{} {}: {}\n", v.pass ? "PASS" : "FAIL", name, v.detail);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
