#include "vinenav/harness.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "vinenav/errors.hpp"

namespace vinenav {

void Scenario::validate() const {
  world.validate();
  camera.validate();
  filter.validate();
  nav.validate();
  robot.validate();
  if (!start_pose.finite()) throw InvalidConfig("scenario: start_pose must be finite");
  if (!(plan_standoff_m > 0.0)) throw InvalidConfig("scenario: plan_standoff_m must be > 0");
  if (n_trials < 1) throw InvalidConfig("scenario: n_trials must be >= 1");
  if (max_ticks < 1) throw InvalidConfig("scenario: max_ticks must be >= 1");
}

std::string_view status_name(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::Done: return "done";
    case TerminalStatus::SearchFailed: return "search_failed";
    case TerminalStatus::TickBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

Vec2 ArrivalRecord::reference(ErrorReference ref) const {
  return ref == ErrorReference::GroundTruth ? true_waypoint : commanded.position;
}

double ArrivalRecord::error(ErrorReference ref) const {
  return ref == ErrorReference::GroundTruth ? true_error_m : commanded_error_m;
}

std::mt19937_64 trial_rng(std::uint64_t base_seed, int trial_index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(trial_index), stream};
  return std::mt19937_64(seq);
}

World build_world(const Scenario& scenario) {
  return scenario.layout == WorldLayout::SingleRow ? single_row_world(scenario.world)
                                                    : generate_world(scenario.world);
}

namespace {

constexpr std::uint32_t kSensorStream = 1;
constexpr std::uint32_t kActuationStream = 2;

VelocityCommand to_velocity(const NavCommand& cmd, const Pose& pose, const RobotConfig& robot) {
  if (const auto* r = std::get_if<nav::RotateInPlace>(&cmd)) return clamp_command({0.0, 0.0, r->yaw_rate}, robot);
  if (const auto* t = std::get_if<nav::Track>(&cmd)) return track(pose, t->waypoint, robot);
  return {};
}

// Scores an arrival against the ideal task pose of the true trunk nearest the
// target cluster. Targets with no true trunk inside the gate are spurious.
ArrivalRecord score_arrival(const Arrival& a, const World& world, const std::vector<TrunkCluster>& clusters,
                            const Scenario& scenario) {
  ArrivalRecord rec;
  rec.target_id = a.target_id;
  rec.commanded = a.waypoint;
  rec.achieved = a.pose;
  rec.commanded_error_m = a.error_m;
  rec.true_error_m = std::numeric_limits<double>::quiet_NaN();
  rec.trunk_distance_m = std::numeric_limits<double>::quiet_NaN();
  rec.true_waypoint = {rec.true_error_m, rec.true_error_m};

  Vec2 estimate = a.waypoint.position;
  for (const auto& c : clusters) {
    if (c.cluster_id == a.target_id) estimate = c.mean_position;
  }
  const Trunk* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : world.trunks) {
    const double d = distance(t.position, estimate);
    if (d < best) {
      best = d;
      nearest = &t;
    }
  }
  if (nearest == nullptr || best > scenario.filter.gate_radius_m) return rec;

  Vec2 axis = world.corridor_axis();
  if (dot(axis, unit_from_angle(a.waypoint.heading)) < 0.0) axis = -1.0 * axis;
  RowModel true_row{axis, nearest->position, nearest->side, {}};
  rec.truth_trunk_id = nearest->id;
  rec.true_waypoint = nearest->position + scenario.plan_standoff_m * corridor_normal(true_row, scenario.nav.work_side);
  rec.true_error_m = distance(a.pose.position(), rec.true_waypoint);
  rec.trunk_distance_m = distance(a.pose.position(), nearest->position);
  return rec;
}

}  // namespace

TrialLog run_trial(const Scenario& scenario, int trial_index) {
  scenario.validate();
  TrialLog log;
  log.trial_index = trial_index;
  log.world = build_world(scenario);

  auto sensor_rng = trial_rng(scenario.base_seed, trial_index, kSensorStream);
  auto actuation_rng = trial_rng(scenario.base_seed, trial_index, kActuationStream);

  Pose pose = scenario.start_pose;
  pose.heading = wrap_angle(pose.heading);
  FilterState filter;
  NavState state = nav::InitialSearch{};
  RowPair rows;
  PlanState plan;
  plan.standoff_m = scenario.plan_standoff_m;
  plan.work_side = scenario.nav.work_side;

  for (int tick = 0; tick < scenario.max_ticks; ++tick) {
    auto detections = sense(log.world, pose, scenario.camera, sensor_rng, tick);
    filter = ingest(std::move(filter), detections, scenario.filter);
    log.detections.insert(log.detections.end(), detections.begin(), detections.end());

    NavInputs inputs{pose, confirmed_trunks(filter, scenario.filter), rows, plan};
    StepResult result;
    try {
      result = step(state, inputs, scenario.nav);
    } catch (const SearchFailed& e) {
      log.status = TerminalStatus::SearchFailed;
      log.message = e.what();
      log.ticks.push_back({tick, std::string(state_name(state)), state_target(state), pose, {}});
      log.final_clusters = std::move(inputs.clusters);
      return log;
    }
    if (result.arrival) {
      log.arrivals.push_back(score_arrival(*result.arrival, log.world, inputs.clusters, scenario));
    }

    const VelocityCommand cmd = to_velocity(result.command, pose, scenario.robot);
    log.ticks.push_back({tick, std::string(state_name(result.state)), state_target(result.state), pose, cmd});

    state = std::move(result.state);
    plan = std::move(result.plan);
    rows = std::move(result.rows);
    if (std::holds_alternative<nav::Done>(state)) {
      log.status = TerminalStatus::Done;
      log.final_clusters = std::move(inputs.clusters);
      return log;
    }
    pose = step_dynamics(pose, cmd, scenario.robot, actuation_rng);
  }
  log.status = TerminalStatus::TickBudgetExceeded;
  log.message = "tick budget of " + std::to_string(scenario.max_ticks) + " exhausted";
  log.final_clusters = confirmed_trunks(filter, scenario.filter);
  return log;
}

ErrorStats error_stats(const std::vector<double>& errors) {
  ErrorStats s;
  s.count = static_cast<int>(errors.size());
  if (errors.empty()) return s;
  double sum = 0.0;
  for (const double e : errors) sum += e;
  s.mean = sum / s.count;
  double ss = 0.0;
  for (const double e : errors) ss += (e - s.mean) * (e - s.mean);
  s.std_pop = std::sqrt(ss / s.count);
  s.std_sample = s.count > 1 ? std::sqrt(ss / (s.count - 1)) : 0.0;
  return s;
}

ExperimentSummary summarize(const std::vector<TrialLog>& logs, ErrorReference ref) {
  ExperimentSummary summary;
  summary.n_trials = static_cast<int>(logs.size());
  std::vector<double> all;
  int completed = 0;
  for (const auto& log : logs) {
    summary.statuses.push_back(log.status);
    if (log.status == TerminalStatus::Done) ++completed;
    auto& trial_errors = summary.per_trial_errors.emplace_back();
    for (const auto& a : log.arrivals) {
      const double err = a.error(ref);
      summary.arrivals.push_back({log.trial_index, a.target_id, a.reference(ref), a.achieved.position(), err,
                                  a.commanded.position, a.commanded_error_m, a.trunk_distance_m});
      // Spurious targets have no ground truth and are left out of the statistics.
      if (std::isfinite(err)) {
        trial_errors.push_back(err);
        all.push_back(err);
      }
    }
  }
  const auto stats = error_stats(all);
  summary.mean_error_m = stats.mean;
  summary.std_error_m = stats.std_pop;
  summary.std_sample_error_m = stats.std_sample;
  summary.completion_rate = logs.empty() ? 0.0 : static_cast<double>(completed) / static_cast<double>(logs.size());
  return summary;
}

std::vector<TrialLog> run_trials(const Scenario& scenario) {
  scenario.validate();
  std::vector<std::future<TrialLog>> pending;
  pending.reserve(static_cast<std::size_t>(scenario.n_trials));
  for (int i = 0; i < scenario.n_trials; ++i) {
    pending.push_back(std::async(std::launch::async, [&scenario, i] { return run_trial(scenario, i); }));
  }
  std::vector<TrialLog> logs;
  logs.reserve(pending.size());
  for (auto& f : pending) logs.push_back(f.get());
  return logs;
}

ExperimentSummary run_experiment(const Scenario& scenario) {
  return summarize(run_trials(scenario), scenario.error_reference);
}

}  // namespace vinenav
