#include "mrrt/simworld.hpp"

#include <algorithm>
#include <cmath>

namespace mrrt {

namespace {

/// Triangle-wave fold of u into [lo, hi]: the coordinate of a point
/// bouncing specularly between the two bounds.
double fold(double u, double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return 0.5 * (lo + hi);
  double m = std::fmod(u - lo, 2.0 * span);
  if (m < 0.0) m += 2.0 * span;
  return m <= span ? lo + m : hi - (m - span);
}

Config waypoint_position(const std::vector<Config>& loop, double speed,
                         double t) {
  double total = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) total += dist(loop[i], loop[(i + 1) % n]);
  if (total == 0.0 || speed == 0.0) return loop.front();
  double s = std::fmod(speed * t, total);
  if (s < 0.0) s += total;
  for (std::size_t i = 0; i < n; ++i) {
    const Config& a = loop[i];
    const Config& b = loop[(i + 1) % n];
    const double seg = dist(a, b);
    if (s <= seg) {
      if (seg == 0.0) return a;
      const double f = s / seg;
      return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    }
    s -= seg;
  }
  return loop.front();
}

bool discs_touch_sensing(const Config& robot, double range, const Disc& d) {
  return dist(robot, d.center) <= range + d.radius;
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (!s.workspace.contains(s.start))
    throw ConfigError("scenario: start lies outside the workspace");
  if (!s.workspace.contains(s.goal))
    throw ConfigError("scenario: goal lies outside the workspace");
  if (!(s.robot.speed > 0.0))
    throw ConfigError("scenario: robot speed must be positive");
  if (!(s.robot.radius >= 0.0))
    throw ConfigError("scenario: robot radius must be >= 0");
  if (!(s.sensor.range > 0.0))
    throw ConfigError("scenario: sensor range must be positive");
  try {
    s.planner.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (!(s.dt > 0.0)) throw ConfigError("scenario: dt must be positive");
  if (s.horizon < 0) throw ConfigError("scenario: horizon must be >= 0");
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const ObstacleSpec& ob = s.obstacles[i];
    const std::string where = "scenario: obstacle " + std::to_string(i);
    if (!(ob.disc.radius > 0.0))
      throw ConfigError(where + ": radius must be positive");
    const Disc& d = ob.disc;
    const bool overlaps = d.center.x + d.radius >= s.workspace.min_x &&
                          d.center.x - d.radius <= s.workspace.max_x &&
                          d.center.y + d.radius >= s.workspace.min_y &&
                          d.center.y - d.radius <= s.workspace.max_y;
    if (!overlaps) throw ConfigError(where + ": disc does not touch the workspace");
    if (ob.motion.kind == Motion::Kind::linear) {
      // The center must start inside the reflect band, otherwise the fold
      // would move the disc at t = 0 already.
      if (d.center.x < s.workspace.min_x + d.radius ||
          d.center.x > s.workspace.max_x - d.radius ||
          d.center.y < s.workspace.min_y + d.radius ||
          d.center.y > s.workspace.max_y - d.radius)
        throw ConfigError(where +
                          ": linear mover must start with the disc fully "
                          "inside the workspace");
    }
    if (ob.motion.kind == Motion::Kind::waypoints) {
      if (ob.motion.waypoints.size() < 2)
        throw ConfigError(where + ": waypoint loop needs at least 2 points");
      if (!(ob.motion.speed >= 0.0))
        throw ConfigError(where + ": waypoint speed must be >= 0");
      for (const Config& w : ob.motion.waypoints)
        if (!s.workspace.contains(w))
          throw ConfigError(where + ": waypoint outside the workspace");
      if (!(ob.disc.center == ob.motion.waypoints.front()))
        throw ConfigError(where + ": center must equal the first waypoint");
    }
  }
}

World::World(const Scenario& scenario)
    : workspace_(scenario.workspace),
      sensor_(scenario.sensor),
      specs_(scenario.obstacles),
      memory_(scenario.obstacles.size()) {
  advance_to(0.0);
}

Disc World::disc_at(std::size_t i, double t) const {
  const ObstacleSpec& ob = specs_[i];
  Disc d = ob.disc;
  switch (ob.motion.kind) {
    case Motion::Kind::fixed:
      break;
    case Motion::Kind::linear: {
      // Bounce the center so that the disc edge touches the wall.
      d.center.x = fold(ob.disc.center.x + ob.motion.velocity.x * t,
                        workspace_.min_x + d.radius, workspace_.max_x - d.radius);
      d.center.y = fold(ob.disc.center.y + ob.motion.velocity.y * t,
                        workspace_.min_y + d.radius, workspace_.max_y - d.radius);
      break;
    }
    case Motion::Kind::waypoints:
      d.center = waypoint_position(ob.motion.waypoints, ob.motion.speed, t);
      break;
  }
  return d;
}

void World::advance_to(double t) {
  time_ = t;
  current_.clear();
  current_.reserve(specs_.size());
  for (std::size_t i = 0; i < specs_.size(); ++i)
    current_.push_back(disc_at(i, t));
}

ObstacleSnapshot World::sense(const Config& robot_pos) {
  ObstacleSnapshot snap;
  snap.time = time_;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const Disc& cur = current_[i];
    if (specs_[i].known) {
      snap.discs.push_back(cur);
      continue;
    }
    if (discs_touch_sensing(robot_pos, sensor_.range, cur)) {
      memory_[i] = cur;
      snap.discs.push_back(cur);
    } else if (memory_[i]) {
      const bool moving = specs_[i].motion.kind != Motion::Kind::fixed;
      if (!moving || !sensor_.forget_out_of_range)
        snap.discs.push_back(*memory_[i]);
    }
  }
  return snap;
}

bool World::robot_collides(const Config& robot_pos, double robot_radius,
                           double t) const {
  for (std::size_t i = 0; i < specs_.size(); ++i)
    if (point_in_disc(robot_pos, disc_at(i, t), robot_radius)) return true;
  return false;
}

const char* episode_status_name(EpisodeStatus s) {
  switch (s) {
    case EpisodeStatus::reached_goal: return "reached_goal";
    case EpisodeStatus::collided: return "collided";
    case EpisodeStatus::timeout: return "timeout";
  }
  return "timeout";
}

Config execute_step(const Robot& robot, const std::optional<Path>& path,
                    double dt) {
  if (!path || path->points.empty()) return robot.config;
  return point_along(*path, robot.speed * dt);
}

TraceMeta make_trace_meta(const Scenario& scenario, Variant variant,
                          std::uint64_t seed) {
  TraceMeta meta;
  meta.workspace = scenario.workspace;
  meta.start = scenario.start;
  meta.goal = scenario.goal;
  meta.robot_radius = scenario.robot.radius;
  meta.inflation = scenario.planner.inflation;
  meta.dt = scenario.dt;
  meta.variant = variant_name(variant);
  meta.seed = seed;
  return meta;
}

EpisodeResult run_episode(const Scenario& scenario, Variant variant,
                          std::uint64_t seed) {
  validate_scenario(scenario);
  World world(scenario);
  for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
    if (point_in_disc(scenario.start, world.disc_at(i, 0.0),
                      scenario.planner.inflation))
      throw ConfigError("scenario: start is in collision at t = 0");
    if (point_in_disc(scenario.goal, world.disc_at(i, 0.0),
                      scenario.planner.inflation))
      throw ConfigError("scenario: goal is in collision at t = 0");
  }

  Robot robot = scenario.robot;
  robot.config = scenario.start;
  PlannerParams params = scenario.planner;
  params.rng_seed = seed;
  Planner planner(scenario.workspace, params);
  const double goal_tolerance = params.eta;

  EpisodeResult result;

  const auto emit = [&](int step, EventKind kind, const ObstacleSnapshot& snap,
                        const ReplanOutcome& out) {
    TraceEvent ev;
    ev.step = step;
    ev.time = world.time();
    ev.robot = robot.config;
    ev.kind = kind;
    ev.obstacles_known = snap.discs;
    ev.obstacles_true = world.true_discs();
    ev.stats = out.stats;
    ev.path = out.path;
    ForestJournal journal = planner.drain_journal();
    ev.forest_reset = journal.reset;
    ev.nodes_added = std::move(journal.nodes_added);
    ev.edges_added = std::move(journal.edges_added);
    ev.edges_removed = std::move(journal.edges_removed);
    result.cycle_stats.push_back(out.stats);
    result.trace.push_back(std::move(ev));
  };

  // Initial plan from partial knowledge of the world.
  ObstacleSnapshot snapshot = world.sense(robot.config);
  ReplanOutcome outcome = planner.plan_initial(scenario.start, scenario.goal,
                                               snapshot);
  std::optional<Path> current_path = outcome.path;
  emit(0, EventKind::replan, snapshot, outcome);

  for (int step = 1; step <= scenario.horizon; ++step) {
    world.advance_to(step * scenario.dt);
    snapshot = world.sense(robot.config);
    try {
      outcome = planner.replan(variant, snapshot, robot.config);
    } catch (const InvalidEndpoint&) {
      // The robot sits inside a known inflated obstacle this instant;
      // hold position and let the next cycles try again.
      outcome = ReplanOutcome{};
    }
    current_path = outcome.path;

    const Config prev = robot.config;
    robot.config = execute_step(robot, current_path, scenario.dt);
    result.distance_traveled += dist(prev, robot.config);
    result.steps = step;

    // Ground-truth collision sweep at dt/10, co-interpolating the robot
    // along its executed path piece and the obstacles in time.
    bool collided = false;
    const double advance = robot.speed * scenario.dt;
    for (int k = 1; k <= 10 && !collided; ++k) {
      const double f = k / 10.0;
      const Config pos =
          current_path ? point_along(*current_path, advance * f) : prev;
      const double tau = (step - 1 + f) * scenario.dt;
      collided = world.robot_collides(pos, robot.radius, tau);
    }

    if (collided) {
      result.status = EpisodeStatus::collided;
      emit(step, EventKind::collision, snapshot, outcome);
      return result;
    }
    if (dist(robot.config, scenario.goal) <= goal_tolerance) {
      result.status = EpisodeStatus::reached_goal;
      emit(step, EventKind::goal, snapshot, outcome);
      return result;
    }
    const bool last = step == scenario.horizon;
    emit(step,
         last ? EventKind::timeout
              : (outcome.stats.edges_pruned > 0 ? EventKind::prune
                                                : EventKind::replan),
         snapshot, outcome);
  }

  result.status = EpisodeStatus::timeout;
  return result;
}

}  // namespace mrrt
