// Parallel-approach waypoints and nearest-unvisited target sequencing.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "vinenav/filter.hpp"
#include "vinenav/geometry.hpp"
#include "vinenav/row_geometry.hpp"

namespace vinenav {

struct Waypoint {
  Vec2 position{};
  double heading{0.0};
  int target_cluster_id{-1};

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

struct PlanState {
  std::set<int> unvisited;
  std::vector<int> visited;
  double standoff_m{0.8};
  Side work_side{Side::Right};

  friend bool operator==(const PlanState&, const PlanState&) = default;
};

/// Unit normal to the row pointing into the corridor, i.e. away from the work side.
Vec2 corridor_normal(const RowModel& row, Side work_side);

/// Task pose for `trunk`: offset standoff_m into the corridor, body parallel to the row.
Waypoint waypoint_for(const TrunkCluster& trunk, const RowModel& row, const PlanState& plan);

/// Closest unvisited cluster to the pose (lowest id on ties); nullopt once every
/// target is visited. Throws InconsistentPlan if an unvisited id is absent.
std::optional<TrunkCluster> next_target(const Pose& pose, const std::vector<TrunkCluster>& clusters,
                                        const PlanState& plan);

/// Throws AlreadyVisited if `cluster_id` is not pending.
PlanState mark_visited(PlanState plan, int cluster_id);

}  // namespace vinenav
