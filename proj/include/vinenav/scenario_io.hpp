// Scenario documents: JSON <-> Scenario, with dotted-path `key=value` overrides
// applied on top of the built-in defaults.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vinenav/harness.hpp"

namespace vinenav {

nlohmann::json scenario_to_json(const Scenario& scenario);

/// Strict conversion: every key must be known and every value well typed.
/// Throws InvalidConfig naming the offending key.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Merges `patch` into `base`, rejecting keys that do not exist in `base`.
void merge_known(nlohmann::json& base, const nlohmann::json& patch, const std::string& prefix = "");

/// Applies one `dotted.path=value` assignment. The value is parsed as JSON when
/// possible, else taken as a string. Throws InvalidConfig on an unknown path.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Defaults <- file contents <- overrides, then validated.
Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace vinenav
