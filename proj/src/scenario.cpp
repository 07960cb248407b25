#include "mrrt/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mrrt {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError("scenario: missing field '" + where + key + "'");
  return *it;
}

double require_number(const json& j, const char* key,
                      const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number())
    throw ConfigError("scenario: field '" + where + key + "' must be a number");
  return v.get<double>();
}

Config config_from(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError("scenario: field '" + what + "' must be [x, y]");
  return Config{v[0].get<double>(), v[1].get<double>()};
}

json config_to(const Config& c) { return json::array({c.x, c.y}); }

Motion motion_from(const json& v, const std::string& where) {
  Motion m;
  const std::string kind = require(v, "kind", where).get<std::string>();
  if (kind == "static") {
    m.kind = Motion::Kind::fixed;
  } else if (kind == "linear") {
    m.kind = Motion::Kind::linear;
    m.velocity = config_from(require(v, "velocity", where), where + "velocity");
  } else if (kind == "waypoints") {
    m.kind = Motion::Kind::waypoints;
    const json& pts = require(v, "waypoints", where);
    if (!pts.is_array())
      throw ConfigError("scenario: field '" + where + "waypoints' must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      m.waypoints.push_back(
          config_from(pts[i], where + "waypoints[" + std::to_string(i) + "]"));
    m.speed = require_number(v, "speed", where);
  } else {
    throw ConfigError("scenario: unknown motion kind '" + kind + "'");
  }
  return m;
}

json motion_to(const Motion& m) {
  json v;
  switch (m.kind) {
    case Motion::Kind::fixed:
      v["kind"] = "static";
      break;
    case Motion::Kind::linear:
      v["kind"] = "linear";
      v["velocity"] = config_to(m.velocity);
      break;
    case Motion::Kind::waypoints: {
      v["kind"] = "waypoints";
      json pts = json::array();
      for (const Config& w : m.waypoints) pts.push_back(config_to(w));
      v["waypoints"] = std::move(pts);
      v["speed"] = m.speed;
      break;
    }
  }
  return v;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario s;
  const json& w = require(j, "workspace", "");
  try {
    s.workspace = Workspace(require_number(w, "min_x", "workspace."),
                            require_number(w, "min_y", "workspace."),
                            require_number(w, "max_x", "workspace."),
                            require_number(w, "max_y", "workspace."));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  s.start = config_from(require(j, "start", ""), "start");
  s.goal = config_from(require(j, "goal", ""), "goal");

  const json& robot = require(j, "robot", "");
  s.robot.speed = require_number(robot, "speed", "robot.");
  s.robot.radius = require_number(robot, "radius", "robot.");

  const json& sensor = require(j, "sensor", "");
  s.sensor.range = require_number(sensor, "range", "sensor.");
  if (sensor.contains("forget_out_of_range"))
    s.sensor.forget_out_of_range = sensor["forget_out_of_range"].get<bool>();

  const json& planner = require(j, "planner", "");
  s.planner.eta = require_number(planner, "eta", "planner.");
  s.planner.goal_bias = require_number(planner, "goal_bias", "planner.");
  s.planner.neighbor_radius =
      require_number(planner, "neighbor_radius", "planner.");
  s.planner.sample_budget =
      static_cast<int>(require_number(planner, "sample_budget", "planner."));
  s.planner.inflation = require_number(planner, "inflation", "planner.");

  const json& obstacles = require(j, "obstacles", "");
  if (!obstacles.is_array())
    throw ConfigError("scenario: field 'obstacles' must be an array");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string where = "obstacles[" + std::to_string(i) + "].";
    const json& ob = obstacles[i];
    ObstacleSpec spec;
    spec.disc.center = config_from(require(ob, "center", where), where + "center");
    spec.disc.radius = require_number(ob, "radius", where);
    spec.motion = motion_from(require(ob, "motion", where), where + "motion.");
    spec.known = require(ob, "known", where).get<bool>();
    s.obstacles.push_back(std::move(spec));
  }

  const json& sim = require(j, "sim", "");
  s.dt = require_number(sim, "dt", "sim.");
  s.horizon = static_cast<int>(require_number(sim, "horizon", "sim."));

  const json& seeds = require(j, "seeds", "");
  if (!seeds.is_array())
    throw ConfigError("scenario: field 'seeds' must be an array");
  for (const auto& v : seeds) s.seeds.push_back(v.get<std::uint64_t>());

  validate_scenario(s);
  return s;
}

std::string scenario_to_json_text(const Scenario& s) {
  json j;
  j["workspace"] = {{"min_x", s.workspace.min_x},
                    {"min_y", s.workspace.min_y},
                    {"max_x", s.workspace.max_x},
                    {"max_y", s.workspace.max_y}};
  j["start"] = config_to(s.start);
  j["goal"] = config_to(s.goal);
  j["robot"] = {{"speed", s.robot.speed}, {"radius", s.robot.radius}};
  j["sensor"] = {{"range", s.sensor.range},
                 {"forget_out_of_range", s.sensor.forget_out_of_range}};
  j["planner"] = {{"eta", s.planner.eta},
                  {"goal_bias", s.planner.goal_bias},
                  {"neighbor_radius", s.planner.neighbor_radius},
                  {"sample_budget", s.planner.sample_budget},
                  {"inflation", s.planner.inflation}};
  json obstacles = json::array();
  for (const ObstacleSpec& ob : s.obstacles) {
    json o;
    o["center"] = config_to(ob.disc.center);
    o["radius"] = ob.disc.radius;
    o["motion"] = motion_to(ob.motion);
    o["known"] = ob.known;
    obstacles.push_back(std::move(o));
  }
  j["obstacles"] = std::move(obstacles);
  j["sim"] = {{"dt", s.dt}, {"horizon", s.horizon}};
  j["seeds"] = s.seeds;
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scenario: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario s = scenario_from_json_text(buf.str());
  s.name = std::filesystem::path(path).stem().string();
  return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("scenario: cannot open for writing: " + path);
  out << scenario_to_json_text(s);
}

}  // namespace mrrt
