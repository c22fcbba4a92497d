// Row line estimation: side partitioning of confirmed trunks and a
// total-least-squares (principal axis) fit per side.

#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "vinenav/filter.hpp"
#include "vinenav/geometry.hpp"

namespace vinenav {

struct RowModel {
  Vec2 direction{1.0, 0.0};  // unit; non-negative dot with the travel heading
  Vec2 anchor{};             // centroid of the fitted points
  Side side{Side::Right};
  std::vector<int> point_ids;

  [[nodiscard]] double heading() const;
  friend bool operator==(const RowModel&, const RowModel&) = default;
};

/// Principal-axis line through `points`. Throws InsufficientPoints when fewer
/// than two distinct points are given and AmbiguousFit when the scatter has no
/// dominant axis. The result is bit-identical under permutation of the input.
RowModel fit_row(const std::vector<Vec2>& points, double travel_heading, Side side = Side::Right,
                 std::vector<int> point_ids = {});

/// Convenience overload fitting the cluster means and recording their ids.
RowModel fit_row(const std::vector<TrunkCluster>& clusters, double travel_heading, Side side);

/// Refit over the current point set, keeping the side label.
RowModel update_row(const RowModel& row, const std::vector<Vec2>& points, double travel_heading);
RowModel update_row(const RowModel& row, const std::vector<TrunkCluster>& clusters,
                    double travel_heading);

struct SideSplit {
  std::vector<TrunkCluster> left;
  std::vector<TrunkCluster> right;
};

/// Left = strictly positive cross product against the pose heading ray.
SideSplit split_sides(const std::vector<TrunkCluster>& clusters, const Pose& pose);

/// Perpendicular distance from the row line, positive to the left of direction.
double signed_lateral_offset(const RowModel& row, Vec2 point);

void to_json(nlohmann::json& j, const RowModel& row);

}  // namespace vinenav
