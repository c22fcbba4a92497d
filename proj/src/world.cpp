#include "vinenav/world.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vinenav/errors.hpp"

namespace vinenav {

void WorldConfig::validate() const {
  if (trunks_per_row < 1) throw InvalidConfig("world: trunks_per_row must be >= 1");
  if (!(trunk_spacing_m > 0.0)) throw InvalidConfig("world: trunk_spacing_m must be > 0");
  if (!(row_separation_m > 0.0)) throw InvalidConfig("world: row_separation_m must be > 0");
  if (!(spacing_jitter_std_m >= 0.0) || !(lateral_jitter_std_m >= 0.0)) {
    throw InvalidConfig("world: jitter stds must be >= 0");
  }
  if (!std::isfinite(row_heading_rad) || !std::isfinite(anchor.x) || !std::isfinite(anchor.y)) {
    throw InvalidConfig("world: heading and anchor must be finite");
  }
}

namespace {

// Appends one row of trunks whose nominal lateral offset from the corridor
// axis is `lateral_m` (positive = left of the row heading).
void append_row(const WorldConfig& config, double lateral_m, Side side, std::mt19937_64& rng,
                std::vector<Trunk>& out) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Vec2 along = unit_from_angle(config.row_heading_rad);
  const Vec2 across = left_normal(along);
  for (int k = 0; k < config.trunks_per_row; ++k) {
    // Draw both components unconditionally so the stream layout does not
    // depend on which stds are zero.
    const double da = gauss(rng) * config.spacing_jitter_std_m;
    const double dl = gauss(rng) * config.lateral_jitter_std_m;
    const double s = k * config.trunk_spacing_m + da;
    const Vec2 p = config.anchor + s * along + (lateral_m + dl) * across;
    out.push_back({static_cast<int>(out.size()), p, side});
  }
}

}  // namespace

World generate_world(const WorldConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  World world;
  world.heading = wrap_angle(config.row_heading_rad);
  world.trunks.reserve(2 * static_cast<std::size_t>(config.trunks_per_row));
  const double half = 0.5 * config.row_separation_m;
  append_row(config, -half, Side::Right, rng, world.trunks);
  append_row(config, +half, Side::Left, rng, world.trunks);
  return world;
}

World single_row_world(const WorldConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  World world;
  world.heading = wrap_angle(config.row_heading_rad);
  world.trunks.reserve(static_cast<std::size_t>(config.trunks_per_row));
  append_row(config, 0.0, Side::Right, rng, world.trunks);
  return world;
}

void to_json(nlohmann::json& j, const World& world) {
  auto trunks = nlohmann::json::array();
  for (const auto& t : world.trunks) {
    trunks.push_back({{"id", t.id},
                      {"x", t.position.x},
                      {"y", t.position.y},
                      {"side", t.side == Side::Left ? "L" : "R"}});
  }
  j = {{"trunks", std::move(trunks)}, {"heading", world.heading}};
}

void from_json(const nlohmann::json& j, World& world) {
  world.trunks.clear();
  world.heading = j.at("heading").get<double>();
  for (const auto& t : j.at("trunks")) {
    const auto side = t.at("side").get<std::string>();
    if (side != "L" && side != "R") throw InvalidInput("world json: side must be \"L\" or \"R\"");
    world.trunks.push_back({t.at("id").get<int>(),
                            {t.at("x").get<double>(), t.at("y").get<double>()},
                            side == "L" ? Side::Left : Side::Right});
  }
}

}  // namespace vinenav
