// Rolling-average detection filter: greedy nearest-neighbour gating of each
// detection onto an existing cluster, incremental mean update, and read-time
// suppression of clusters seen fewer than min_observations times.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "vinenav/geometry.hpp"
#include "vinenav/perception.hpp"

namespace vinenav {

struct FilterConfig {
  double gate_radius_m{0.4};
  int min_observations{3};
  /// Window length of the rolling mean; nullopt means cumulative.
  std::optional<std::size_t> rolling_window{};

  void validate() const;
};

struct TrunkCluster {
  int cluster_id{0};
  Vec2 mean_position{};
  int observation_count{1};
  int last_seen_frame{0};

  friend bool operator==(const TrunkCluster&, const TrunkCluster&) = default;
};

struct FilterState {
  std::vector<TrunkCluster> clusters;  // indexed by cluster_id
  /// Samples retained per cluster in windowed mode (empty otherwise).
  std::vector<std::vector<Vec2>> windows;
  /// Cluster id chosen for each detection of the most recent ingest call.
  std::vector<int> last_assignment;

  friend bool operator==(const FilterState&, const FilterState&) = default;
};

FilterState ingest(FilterState state, const std::vector<TrunkDetection>& detections,
                   const FilterConfig& config);

/// Clusters with at least min_observations detections, sorted by id.
std::vector<TrunkCluster> confirmed_trunks(const FilterState& state, const FilterConfig& config);

void to_json(nlohmann::json& j, const TrunkCluster& c);
void to_json(nlohmann::json& j, const FilterState& state);

}  // namespace vinenav
