// Higher-level navigation control: initial search sweep, row fitting, target
// selection, parallel approach, task pause with detection refresh, done.

#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "vinenav/filter.hpp"
#include "vinenav/geometry.hpp"
#include "vinenav/planner.hpp"
#include "vinenav/row_geometry.hpp"

namespace vinenav {

struct NavConfig {
  Side work_side{Side::Right};
  int search_frames{60};
  int pause_ticks{20};
  double arrival_pos_tol_m{0.01};
  double arrival_heading_tol_rad{0.05};
  /// Rotation rate commanded during the search sweep.
  double search_yaw_rate_rps{0.6};
  /// Minimum accumulated rotation before the search may end.
  double search_sweep_rad{kTwoPi};

  void validate() const;
};

namespace nav {

struct InitialSearch {
  int frames{0};
  double swept_rad{0.0};
  /// Heading at the first search frame; fixes the row direction sign.
  std::optional<double> travel_heading{};
  double last_heading{0.0};
  friend bool operator==(const InitialSearch&, const InitialSearch&) = default;
};
struct FitRows {
  double travel_heading{0.0};
  friend bool operator==(const FitRows&, const FitRows&) = default;
};
struct Replan {
  friend bool operator==(const Replan&, const Replan&) = default;
};
struct Approach {
  Waypoint waypoint{};
  friend bool operator==(const Approach&, const Approach&) = default;
};
struct TaskPause {
  int remaining{0};
  int target_id{-1};
  friend bool operator==(const TaskPause&, const TaskPause&) = default;
};
struct Done {
  friend bool operator==(const Done&, const Done&) = default;
};

struct RotateInPlace {
  double yaw_rate{0.0};
  friend bool operator==(const RotateInPlace&, const RotateInPlace&) = default;
};
struct Track {
  Waypoint waypoint{};
  friend bool operator==(const Track&, const Track&) = default;
};
struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};

}  // namespace nav

using NavState = std::variant<nav::InitialSearch, nav::FitRows, nav::Replan, nav::Approach, nav::TaskPause, nav::Done>;
using NavCommand = std::variant<nav::RotateInPlace, nav::Track, nav::Stop>;

struct RowPair {
  std::optional<RowModel> left;
  std::optional<RowModel> right;

  [[nodiscard]] const std::optional<RowModel>& on(Side s) const { return s == Side::Left ? left : right; }
  std::optional<RowModel>& on(Side s) { return s == Side::Left ? left : right; }
  friend bool operator==(const RowPair&, const RowPair&) = default;
};

struct NavInputs {
  Pose pose{};
  std::vector<TrunkCluster> clusters;  // confirmed clusters
  RowPair rows;
  PlanState plan;
};

/// Emitted on the Approach -> TaskPause transition.
struct Arrival {
  int target_id{-1};
  Waypoint waypoint{};
  Pose pose{};
  double error_m{0.0};
  friend bool operator==(const Arrival&, const Arrival&) = default;
};

struct StepResult {
  NavState state;
  NavCommand command;
  PlanState plan;
  RowPair rows;
  std::optional<Arrival> arrival;
};

/// Pure transition. Throws SearchFailed when the sweep ends with fewer than
/// two confirmed work-side clusters; planner errors propagate unchanged.
StepResult step(const NavState& state, const NavInputs& inputs, const NavConfig& config);

std::string_view state_name(const NavState& state);

/// Target cluster of Approach / TaskPause, otherwise -1.
int state_target(const NavState& state);

}  // namespace vinenav
