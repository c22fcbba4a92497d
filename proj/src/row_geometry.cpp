#include "vinenav/row_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vinenav/errors.hpp"

namespace vinenav {

double RowModel::heading() const { return std::atan2(direction.y, direction.x); }

namespace {

// Relative eigenvalue gap below which the scatter counts as isotropic.
constexpr double kIsotropyTol = 1e-12;

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

RowModel fit_row(const std::vector<Vec2>& points, double travel_heading, Side side,
                 std::vector<int> point_ids) {
  // Sorting makes the floating-point sums independent of input order.
  std::vector<Vec2> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  const auto distinct = std::unique(pts.begin(), pts.end()) - pts.begin();
  if (distinct < 2) throw InsufficientPoints("fit_row: need at least two distinct points");

  Vec2 sum{};
  for (const auto& p : pts) sum = sum + p;
  const double n = static_cast<double>(pts.size());
  const Vec2 centroid = (1.0 / n) * sum;

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    const Vec2 d = p - centroid;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  // Eigenvalues of [[sxx, sxy], [sxy, syy]] differ by 2 * half_gap.
  const double half_gap = std::hypot(0.5 * (sxx - syy), sxy);
  if (half_gap <= kIsotropyTol * (sxx + syy)) {
    throw AmbiguousFit("fit_row: point scatter is isotropic, no principal direction");
  }
  const double axis_angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  Vec2 dir = unit_from_angle(axis_angle);
  if (dot(dir, unit_from_angle(travel_heading)) < 0.0) dir = -1.0 * dir;

  std::sort(point_ids.begin(), point_ids.end());
  return RowModel{dir, centroid, side, std::move(point_ids)};
}

RowModel fit_row(const std::vector<TrunkCluster>& clusters, double travel_heading, Side side) {
  std::vector<Vec2> pts;
  std::vector<int> ids;
  pts.reserve(clusters.size());
  ids.reserve(clusters.size());
  for (const auto& c : clusters) {
    pts.push_back(c.mean_position);
    ids.push_back(c.cluster_id);
  }
  return fit_row(pts, travel_heading, side, std::move(ids));
}

RowModel update_row(const RowModel& row, const std::vector<Vec2>& points, double travel_heading) {
  return fit_row(points, travel_heading, row.side);
}

RowModel update_row(const RowModel& row, const std::vector<TrunkCluster>& clusters,
                    double travel_heading) {
  return fit_row(clusters, travel_heading, row.side);
}

SideSplit split_sides(const std::vector<TrunkCluster>& clusters, const Pose& pose) {
  SideSplit out;
  const Vec2 ray = unit_from_angle(pose.heading);
  for (const auto& c : clusters) {
    if (cross(ray, c.mean_position - pose.position()) > 0.0) {
      out.left.push_back(c);
    } else {
      out.right.push_back(c);
    }
  }
  return out;
}

double signed_lateral_offset(const RowModel& row, Vec2 point) {
  return cross(row.direction, point - row.anchor);
}

void to_json(nlohmann::json& j, const RowModel& row) {
  j = {{"direction", {row.direction.x, row.direction.y}},
       {"anchor", {row.anchor.x, row.anchor.y}},
       {"side", side_name(row.side)},
       {"point_ids", row.point_ids}};
}

}  // namespace vinenav
