#include "vinenav/scenario_io.hpp"

#include <fstream>

#include "vinenav/errors.hpp"

namespace vinenav {

using nlohmann::json;

namespace {

std::string side_string(Side s) { return std::string(side_name(s)); }

Side parse_side(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw InvalidConfig("nav.work_side must be \"left\" or \"right\", got \"" + s + "\"");
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json window = s.filter.rolling_window ? json(*s.filter.rolling_window) : json("cumulative");
  return {
      {"world",
       {{"trunks_per_row", s.world.trunks_per_row},
        {"trunk_spacing_m", s.world.trunk_spacing_m},
        {"row_separation_m", s.world.row_separation_m},
        {"spacing_jitter_std_m", s.world.spacing_jitter_std_m},
        {"lateral_jitter_std_m", s.world.lateral_jitter_std_m},
        {"row_heading_rad", s.world.row_heading_rad},
        {"anchor_x", s.world.anchor.x},
        {"anchor_y", s.world.anchor.y},
        {"seed", s.world.seed}}},
      {"layout", s.layout == WorldLayout::SingleRow ? "single_row" : "two_rows"},
      {"start_pose", {{"x", s.start_pose.x}, {"y", s.start_pose.y}, {"heading", s.start_pose.heading}}},
      {"camera",
       {{"fov_rad", s.camera.fov_rad},
        {"max_range_m", s.camera.max_range_m},
        {"min_range_m", s.camera.min_range_m},
        {"position_noise_std_m", s.camera.position_noise_std_m},
        {"miss_prob", s.camera.miss_prob},
        {"false_positive_rate", s.camera.false_positive_rate}}},
      {"filter",
       {{"gate_radius_m", s.filter.gate_radius_m},
        {"min_observations", s.filter.min_observations},
        {"rolling_window", window}}},
      {"nav",
       {{"work_side", side_string(s.nav.work_side)},
        {"search_frames", s.nav.search_frames},
        {"pause_ticks", s.nav.pause_ticks},
        {"arrival_pos_tol_m", s.nav.arrival_pos_tol_m},
        {"arrival_heading_tol_rad", s.nav.arrival_heading_tol_rad},
        {"search_yaw_rate_rps", s.nav.search_yaw_rate_rps},
        {"search_sweep_rad", s.nav.search_sweep_rad}}},
      {"robot",
       {{"body_length_m", s.robot.body_length_m},
        {"max_speed_mps", s.robot.max_speed_mps},
        {"max_lateral_mps", s.robot.max_lateral_mps},
        {"max_yaw_rate_rps", s.robot.max_yaw_rate_rps},
        {"actuation_noise_std", s.robot.actuation_noise_std},
        {"dt_s", s.robot.dt_s},
        {"k_pos", s.robot.k_pos},
        {"k_heading", s.robot.k_heading}}},
      {"plan_standoff_m", s.plan_standoff_m},
      {"n_trials", s.n_trials},
      {"base_seed", s.base_seed},
      {"max_ticks", s.max_ticks},
      {"error_reference", s.error_reference == ErrorReference::GroundTruth ? "ground_truth" : "commanded"},
  };
}

void merge_known(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw InvalidConfig("scenario: expected an object at '" + prefix + "'");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) throw InvalidConfig("scenario: unknown key '" + path + "'");
    if (base[key].is_object()) {
      merge_known(base[key], value, path);
    } else {
      base[key] = value;
    }
  }
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InvalidConfig("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot_pos = path.find('.', start);
    const std::string key = path.substr(start, dot_pos - start);
    if (!node->is_object() || !node->contains(key)) throw InvalidConfig("unknown override path '" + path + "'");
    node = &(*node)[key];
    if (dot_pos == std::string::npos) break;
    start = dot_pos + 1;
  }
  if (node->is_object()) throw InvalidConfig("override path '" + path + "' names a section, not a value");
  json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
  *node = value.is_discarded() ? json(raw) : std::move(value);
}

Scenario scenario_from_json(const json& doc) {
  json full = scenario_to_json(Scenario{});
  merge_known(full, doc);
  Scenario s;
  try {
    const auto& w = full.at("world");
    s.world.trunks_per_row = w.at("trunks_per_row").get<int>();
    s.world.trunk_spacing_m = w.at("trunk_spacing_m").get<double>();
    s.world.row_separation_m = w.at("row_separation_m").get<double>();
    s.world.spacing_jitter_std_m = w.at("spacing_jitter_std_m").get<double>();
    s.world.lateral_jitter_std_m = w.at("lateral_jitter_std_m").get<double>();
    s.world.row_heading_rad = w.at("row_heading_rad").get<double>();
    s.world.anchor = {w.at("anchor_x").get<double>(), w.at("anchor_y").get<double>()};
    s.world.seed = w.at("seed").get<std::uint64_t>();

    const auto layout = full.at("layout").get<std::string>();
    if (layout == "single_row") {
      s.layout = WorldLayout::SingleRow;
    } else if (layout == "two_rows") {
      s.layout = WorldLayout::TwoRows;
    } else {
      throw InvalidConfig("layout must be \"single_row\" or \"two_rows\", got \"" + layout + "\"");
    }

    const auto& sp = full.at("start_pose");
    s.start_pose = {sp.at("x").get<double>(), sp.at("y").get<double>(), sp.at("heading").get<double>()};

    const auto& c = full.at("camera");
    s.camera.fov_rad = c.at("fov_rad").get<double>();
    s.camera.max_range_m = c.at("max_range_m").get<double>();
    s.camera.min_range_m = c.at("min_range_m").get<double>();
    s.camera.position_noise_std_m = c.at("position_noise_std_m").get<double>();
    s.camera.miss_prob = c.at("miss_prob").get<double>();
    s.camera.false_positive_rate = c.at("false_positive_rate").get<double>();

    const auto& f = full.at("filter");
    s.filter.gate_radius_m = f.at("gate_radius_m").get<double>();
    s.filter.min_observations = f.at("min_observations").get<int>();
    const auto& window = f.at("rolling_window");
    if (window.is_string()) {
      if (window.get<std::string>() != "cumulative") {
        throw InvalidConfig("filter.rolling_window must be \"cumulative\" or a positive count");
      }
      s.filter.rolling_window.reset();
    } else {
      const auto n = window.get<long long>();
      if (n < 1) throw InvalidConfig("filter.rolling_window must be >= 1");
      s.filter.rolling_window = static_cast<std::size_t>(n);
    }

    const auto& n = full.at("nav");
    s.nav.work_side = parse_side(n.at("work_side"));
    s.nav.search_frames = n.at("search_frames").get<int>();
    s.nav.pause_ticks = n.at("pause_ticks").get<int>();
    s.nav.arrival_pos_tol_m = n.at("arrival_pos_tol_m").get<double>();
    s.nav.arrival_heading_tol_rad = n.at("arrival_heading_tol_rad").get<double>();
    s.nav.search_yaw_rate_rps = n.at("search_yaw_rate_rps").get<double>();
    s.nav.search_sweep_rad = n.at("search_sweep_rad").get<double>();

    const auto& r = full.at("robot");
    s.robot.body_length_m = r.at("body_length_m").get<double>();
    s.robot.max_speed_mps = r.at("max_speed_mps").get<double>();
    s.robot.max_lateral_mps = r.at("max_lateral_mps").get<double>();
    s.robot.max_yaw_rate_rps = r.at("max_yaw_rate_rps").get<double>();
    s.robot.actuation_noise_std = r.at("actuation_noise_std").get<double>();
    s.robot.dt_s = r.at("dt_s").get<double>();
    s.robot.k_pos = r.at("k_pos").get<double>();
    s.robot.k_heading = r.at("k_heading").get<double>();

    s.plan_standoff_m = full.at("plan_standoff_m").get<double>();
    s.n_trials = full.at("n_trials").get<int>();
    s.base_seed = full.at("base_seed").get<std::uint64_t>();
    s.max_ticks = full.at("max_ticks").get<int>();
    const auto ref = full.at("error_reference").get<std::string>();
    if (ref == "ground_truth") {
      s.error_reference = ErrorReference::GroundTruth;
    } else if (ref == "commanded") {
      s.error_reference = ErrorReference::Commanded;
    } else {
      throw InvalidConfig("error_reference must be \"ground_truth\" or \"commanded\", got \"" + ref + "\"");
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  json file_doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (file_doc.is_discarded()) throw InvalidConfig("scenario file '" + path + "' is not valid JSON");

  json doc = scenario_to_json(Scenario{});
  merge_known(doc, file_doc);
  for (const auto& o : overrides) apply_override(doc, o);
  return scenario_from_json(doc);
}

}  // namespace vinenav
