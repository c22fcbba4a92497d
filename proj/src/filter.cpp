#include "vinenav/filter.hpp"

#include <limits>

#include "vinenav/errors.hpp"

namespace vinenav {

void FilterConfig::validate() const {
  if (!(gate_radius_m > 0.0)) throw InvalidConfig("filter: gate_radius_m must be > 0");
  if (min_observations < 1) throw InvalidConfig("filter: min_observations must be >= 1");
  if (rolling_window && *rolling_window == 0) throw InvalidConfig("filter: rolling_window must be >= 1");
}

namespace {

// Nearest cluster within the gate; strict '<' keeps the lowest id on ties.
int nearest_within_gate(const std::vector<TrunkCluster>& clusters, Vec2 p, double gate) {
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters) {
    const double d = distance(c.mean_position, p);
    if (d <= gate && d < best_dist) {
      best = c.cluster_id;
      best_dist = d;
    }
  }
  return best;
}

Vec2 window_mean(const std::vector<Vec2>& samples) {
  Vec2 sum{};
  for (const auto& s : samples) sum = sum + s;
  return (1.0 / static_cast<double>(samples.size())) * sum;
}

}  // namespace

FilterState ingest(FilterState state, const std::vector<TrunkDetection>& detections,
                   const FilterConfig& config) {
  const bool windowed = config.rolling_window.has_value();
  state.last_assignment.clear();
  state.last_assignment.reserve(detections.size());

  for (const auto& det : detections) {
    const int id = nearest_within_gate(state.clusters, det.position, config.gate_radius_m);
    if (id < 0) {
      const int new_id = static_cast<int>(state.clusters.size());
      state.clusters.push_back({new_id, det.position, 1, det.frame_index});
      if (windowed) state.windows.push_back({det.position});
      state.last_assignment.push_back(new_id);
      continue;
    }
    auto& c = state.clusters[static_cast<std::size_t>(id)];
    c.observation_count += 1;
    c.last_seen_frame = det.frame_index;
    if (windowed) {
      auto& w = state.windows[static_cast<std::size_t>(id)];
      w.push_back(det.position);
      if (w.size() > *config.rolling_window) w.erase(w.begin());
      c.mean_position = window_mean(w);
    } else {
      c.mean_position = c.mean_position +
                        (1.0 / static_cast<double>(c.observation_count)) * (det.position - c.mean_position);
    }
    state.last_assignment.push_back(id);
  }
  return state;
}

std::vector<TrunkCluster> confirmed_trunks(const FilterState& state, const FilterConfig& config) {
  std::vector<TrunkCluster> out;
  for (const auto& c : state.clusters) {
    if (c.observation_count >= config.min_observations) out.push_back(c);
  }
  return out;
}

void to_json(nlohmann::json& j, const TrunkCluster& c) {
  j = {{"id", c.cluster_id},
       {"x", c.mean_position.x},
       {"y", c.mean_position.y},
       {"count", c.observation_count},
       {"last_seen_frame", c.last_seen_frame}};
}

void to_json(nlohmann::json& j, const FilterState& state) {
  j = nlohmann::json::array();
  for (const auto& c : state.clusters) j.push_back(c);
}

}  // namespace vinenav
