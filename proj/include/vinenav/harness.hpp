// Seeded closed-loop trials (sense -> filter -> state machine -> track ->
// dynamics) and arrival-error statistics across trials.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vinenav/filter.hpp"
#include "vinenav/perception.hpp"
#include "vinenav/robot.hpp"
#include "vinenav/state_machine.hpp"
#include "vinenav/world.hpp"

namespace vinenav {

enum class WorldLayout { SingleRow, TwoRows };

/// Which point an arrival is scored against.
enum class ErrorReference {
  /// Ideal task pose computed from the true trunk and true row direction.
  GroundTruth,
  /// The waypoint the state machine actually commanded.
  Commanded,
};

struct Scenario {
  WorldConfig world{};
  WorldLayout layout{WorldLayout::SingleRow};
  Pose start_pose{-0.8, 0.8, 0.0};
  CameraConfig camera{};
  FilterConfig filter{};
  NavConfig nav{};
  RobotConfig robot{};
  double plan_standoff_m{0.8};
  int n_trials{10};
  std::uint64_t base_seed{0};
  int max_ticks{20000};
  ErrorReference error_reference{ErrorReference::GroundTruth};

  void validate() const;
};

enum class TerminalStatus { Done, SearchFailed, TickBudgetExceeded };

std::string_view status_name(TerminalStatus s);

struct TickRecord {
  int tick{0};
  std::string state;
  int target_id{-1};
  Pose pose{};  // pose at the start of the tick
  VelocityCommand command{};

  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct ArrivalRecord {
  int target_id{-1};
  Waypoint commanded{};
  Pose achieved{};
  double commanded_error_m{0.0};
  /// Nearest ground-truth trunk, or -1 when the target was a spurious cluster.
  int truth_trunk_id{-1};
  Vec2 true_waypoint{};
  double true_error_m{0.0};  // NaN when truth_trunk_id < 0
  double trunk_distance_m{0.0};  // robot center to true trunk

  [[nodiscard]] Vec2 reference(ErrorReference ref) const;
  [[nodiscard]] double error(ErrorReference ref) const;
  friend bool operator==(const ArrivalRecord&, const ArrivalRecord&) = default;
};

struct TrialLog {
  int trial_index{0};
  World world;
  std::vector<TickRecord> ticks;
  std::vector<ArrivalRecord> arrivals;
  std::vector<TrunkDetection> detections;
  std::vector<TrunkCluster> final_clusters;  // confirmed at termination
  TerminalStatus status{TerminalStatus::TickBudgetExceeded};
  std::string message;

  friend bool operator==(const TrialLog&, const TrialLog&) = default;
};

/// Independent RNG stream for (base_seed, trial_index, stream tag).
std::mt19937_64 trial_rng(std::uint64_t base_seed, int trial_index, std::uint32_t stream);

World build_world(const Scenario& scenario);

TrialLog run_trial(const Scenario& scenario, int trial_index);

struct ArrivalRow {
  int trial{0};
  int target_id{-1};
  Vec2 waypoint{};  // scored reference
  Vec2 achieved{};
  double error_m{0.0};
  Vec2 commanded{};
  double commanded_error_m{0.0};
  double trunk_distance_m{0.0};

  friend bool operator==(const ArrivalRow&, const ArrivalRow&) = default;
};

struct ExperimentSummary {
  double mean_error_m{0.0};
  double std_error_m{0.0};  // population
  double std_sample_error_m{0.0};
  std::vector<std::vector<double>> per_trial_errors;
  double completion_rate{0.0};
  int n_trials{0};
  std::vector<TerminalStatus> statuses;
  std::vector<ArrivalRow> arrivals;  // trial-major order

  [[nodiscard]] int n_arrivals() const { return static_cast<int>(arrivals.size()); }
  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

struct ErrorStats {
  double mean{0.0};
  double std_pop{0.0};
  double std_sample{0.0};
  int count{0};
};

/// Mean with population and sample std; zeros for an empty input, sample std
/// zero below two values.
ErrorStats error_stats(const std::vector<double>& errors);

ExperimentSummary summarize(const std::vector<TrialLog>& logs, ErrorReference ref);

std::vector<TrialLog> run_trials(const Scenario& scenario);

ExperimentSummary run_experiment(const Scenario& scenario);

}  // namespace vinenav
