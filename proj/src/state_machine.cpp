#include "vinenav/state_machine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vinenav/errors.hpp"

namespace vinenav {

void NavConfig::validate() const {
  if (search_frames < 1 || pause_ticks < 1) throw InvalidConfig("nav: search_frames and pause_ticks must be >= 1");
  if (!(arrival_pos_tol_m > 0.0 && arrival_heading_tol_rad > 0.0)) {
    throw InvalidConfig("nav: arrival tolerances must be > 0");
  }
  if (!(search_yaw_rate_rps > 0.0)) throw InvalidConfig("nav: search_yaw_rate_rps must be > 0");
  if (!(search_sweep_rad >= 0.0)) throw InvalidConfig("nav: search_sweep_rad must be >= 0");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<TrunkCluster> work_side_clusters(const std::vector<TrunkCluster>& clusters, Vec2 position,
                                             double travel_heading, Side work_side) {
  auto split = split_sides(clusters, Pose{position.x, position.y, travel_heading});
  return work_side == Side::Left ? std::move(split.left) : std::move(split.right);
}

// Refits each side that has enough points; a side that cannot be fitted keeps
// its previous model.
RowPair refit_rows(const RowPair& rows, const std::vector<TrunkCluster>& clusters, Vec2 position,
                   double travel_heading) {
  const auto split = split_sides(clusters, Pose{position.x, position.y, travel_heading});
  RowPair out = rows;
  for (const Side side : {Side::Left, Side::Right}) {
    const auto& pts = side == Side::Left ? split.left : split.right;
    if (pts.size() < 2) continue;
    try {
      out.on(side) = rows.on(side) ? update_row(*rows.on(side), pts, travel_heading)
                                   : fit_row(pts, travel_heading, side);
    } catch (const InsufficientPoints&) {
    } catch (const AmbiguousFit&) {
    }
  }
  return out;
}

StepResult replan(const NavInputs& in) {
  const auto& row = in.rows.on(in.plan.work_side);
  if (!row) throw InconsistentPlan("replan: no row model for the work side");
  const auto target = next_target(in.pose, in.clusters, in.plan);
  if (!target) return {nav::Done{}, nav::Stop{}, in.plan, in.rows, std::nullopt};
  const Waypoint wp = waypoint_for(*target, *row, in.plan);
  return {nav::Approach{wp}, nav::Track{wp}, in.plan, in.rows, std::nullopt};
}

}  // namespace

StepResult step(const NavState& state, const NavInputs& in, const NavConfig& config) {
  return std::visit(
      overloaded{
          [&](const nav::InitialSearch& s) -> StepResult {
            nav::InitialSearch next = s;
            if (!next.travel_heading) {
              next.travel_heading = in.pose.heading;
            } else {
              next.swept_rad += std::abs(wrap_angle(in.pose.heading - s.last_heading));
            }
            next.last_heading = in.pose.heading;
            next.frames += 1;
            if (next.frames < config.search_frames || next.swept_rad < config.search_sweep_rad) {
              return {next, nav::RotateInPlace{config.search_yaw_rate_rps}, in.plan, in.rows, std::nullopt};
            }
            const auto work =
                work_side_clusters(in.clusters, in.pose.position(), *next.travel_heading, config.work_side);
            if (work.size() < 2) {
              throw SearchFailed("initial search found " + std::to_string(work.size()) +
                                 " confirmed trunk(s) on the " + std::string(side_name(config.work_side)) +
                                 " side; need 2");
            }
            return {nav::FitRows{*next.travel_heading}, nav::Stop{}, in.plan, in.rows, std::nullopt};
          },
          [&](const nav::FitRows& s) -> StepResult {
            const auto work = work_side_clusters(in.clusters, in.pose.position(), s.travel_heading, config.work_side);
            if (work.size() < 2) throw SearchFailed("fit rows: fewer than 2 confirmed work-side trunks");
            RowPair rows = refit_rows(RowPair{}, in.clusters, in.pose.position(), s.travel_heading);
            if (!rows.on(config.work_side)) {
              throw SearchFailed("fit rows: work-side trunks do not define a row direction");
            }
            PlanState plan = in.plan;
            plan.work_side = config.work_side;
            plan.unvisited.clear();
            for (const auto& c : work) {
              if (std::find(plan.visited.begin(), plan.visited.end(), c.cluster_id) == plan.visited.end()) {
                plan.unvisited.insert(c.cluster_id);
              }
            }
            return {nav::Replan{}, nav::Stop{}, std::move(plan), std::move(rows), std::nullopt};
          },
          [&](const nav::Replan&) -> StepResult { return replan(in); },
          [&](const nav::Approach& s) -> StepResult {
            const double pos_err = distance(in.pose.position(), s.waypoint.position);
            const double heading_err = std::abs(wrap_angle(s.waypoint.heading - in.pose.heading));
            if (pos_err <= config.arrival_pos_tol_m && heading_err <= config.arrival_heading_tol_rad) {
              Arrival arrival{s.waypoint.target_cluster_id, s.waypoint, in.pose, pos_err};
              return {nav::TaskPause{config.pause_ticks, s.waypoint.target_cluster_id}, nav::Stop{}, in.plan,
                      in.rows, arrival};
            }
            return {s, nav::Track{s.waypoint}, in.plan, in.rows, std::nullopt};
          },
          [&](const nav::TaskPause& s) -> StepResult {
            if (s.remaining > 1) {
              return {nav::TaskPause{s.remaining - 1, s.target_id}, nav::Stop{}, in.plan, in.rows, std::nullopt};
            }
            PlanState plan = mark_visited(in.plan, s.target_id);
            const auto& work_row = in.rows.on(plan.work_side);
            if (!work_row) throw InconsistentPlan("task pause: no row model for the work side");
            const double travel = work_row->heading();
            for (const auto& c : work_side_clusters(in.clusters, in.pose.position(), travel, plan.work_side)) {
              const bool seen = plan.unvisited.contains(c.cluster_id) ||
                                std::find(plan.visited.begin(), plan.visited.end(), c.cluster_id) != plan.visited.end();
              if (!seen) plan.unvisited.insert(c.cluster_id);
            }
            RowPair rows = refit_rows(in.rows, in.clusters, in.pose.position(), travel);
            return {nav::Replan{}, nav::Stop{}, std::move(plan), std::move(rows), std::nullopt};
          },
          [&](const nav::Done&) -> StepResult {
            return {nav::Done{}, nav::Stop{}, in.plan, in.rows, std::nullopt};
          },
      },
      state);
}

std::string_view state_name(const NavState& state) {
  return std::visit(overloaded{
                        [](const nav::InitialSearch&) { return std::string_view{"InitialSearch"}; },
                        [](const nav::FitRows&) { return std::string_view{"FitRows"}; },
                        [](const nav::Replan&) { return std::string_view{"Replan"}; },
                        [](const nav::Approach&) { return std::string_view{"Approach"}; },
                        [](const nav::TaskPause&) { return std::string_view{"TaskPause"}; },
                        [](const nav::Done&) { return std::string_view{"Done"}; },
                    },
                    state);
}

int state_target(const NavState& state) {
  if (const auto* a = std::get_if<nav::Approach>(&state)) return a->waypoint.target_cluster_id;
  if (const auto* p = std::get_if<nav::TaskPause>(&state)) return p->target_id;
  return -1;
}

}  // namespace vinenav
