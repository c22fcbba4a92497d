#include "vinenav/planner.hpp"

#include <string>

#include "vinenav/errors.hpp"

namespace vinenav {

Vec2 corridor_normal(const RowModel& row, Side work_side) {
  const Vec2 left = left_normal(row.direction);
  return work_side == Side::Right ? left : -1.0 * left;
}

Waypoint waypoint_for(const TrunkCluster& trunk, const RowModel& row, const PlanState& plan) {
  const Vec2 n = corridor_normal(row, plan.work_side);
  return {trunk.mean_position + plan.standoff_m * n, row.heading(), trunk.cluster_id};
}

std::optional<TrunkCluster> next_target(const Pose& pose, const std::vector<TrunkCluster>& clusters,
                                        const PlanState& plan) {
  std::optional<TrunkCluster> best;
  double best_dist = 0.0;
  // std::set iterates ids ascending, so strict '<' keeps the lowest id on ties.
  for (const int id : plan.unvisited) {
    const TrunkCluster* match = nullptr;
    for (const auto& c : clusters) {
      if (c.cluster_id == id) {
        match = &c;
        break;
      }
    }
    if (match == nullptr) {
      throw InconsistentPlan("next_target: unvisited cluster " + std::to_string(id) + " not among clusters");
    }
    const double d = distance(pose.position(), match->mean_position);
    if (!best || d < best_dist) {
      best = *match;
      best_dist = d;
    }
  }
  return best;
}

PlanState mark_visited(PlanState plan, int cluster_id) {
  if (plan.unvisited.erase(cluster_id) == 0) {
    throw AlreadyVisited("mark_visited: cluster " + std::to_string(cluster_id) + " is not pending");
  }
  plan.visited.push_back(cluster_id);
  return plan;
}

}  // namespace vinenav
