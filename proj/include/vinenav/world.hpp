// Ground-truth vineyard: rows of point trunks flanking a corridor.

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "vinenav/geometry.hpp"

namespace vinenav {

struct WorldConfig {
  int trunks_per_row{5};
  double trunk_spacing_m{0.8};
  double row_separation_m{2.4};  // corridor width
  double spacing_jitter_std_m{0.0};
  double lateral_jitter_std_m{0.0};
  double row_heading_rad{0.0};
  Vec2 anchor{};
  std::uint64_t seed{0};

  /// Throws InvalidConfig naming the first violated constraint.
  void validate() const;
};

struct Trunk {
  int id{0};
  Vec2 position{};
  Side side{Side::Right};

  friend bool operator==(const Trunk&, const Trunk&) = default;
};

/// Immutable after generation.
struct World {
  std::vector<Trunk> trunks;
  double heading{0.0};

  [[nodiscard]] Vec2 corridor_axis() const { return unit_from_angle(heading); }
  friend bool operator==(const World&, const World&) = default;
};

/// Two rows at +/- row_separation/2 about the corridor axis. Right row gets ids
/// [0, n), left row [n, 2n).
World generate_world(const WorldConfig& config);

/// One row of trunks on the corridor axis itself, all labelled Right.
World single_row_world(const WorldConfig& config);

void to_json(nlohmann::json& j, const World& world);
void from_json(const nlohmann::json& j, World& world);

}  // namespace vinenav
