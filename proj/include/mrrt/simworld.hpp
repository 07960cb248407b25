#ifndef MRRT_SIMWORLD_HPP
#define MRRT_SIMWORLD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrrt/geometry.hpp"
#include "mrrt/planner.hpp"
#include "mrrt/trace.hpp"

namespace mrrt {

/// Scenario or input file is malformed or inconsistent.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Motion {
  enum class Kind { fixed, linear, waypoints };
  Kind kind = Kind::fixed;
  Config velocity{0.0, 0.0};        // linear: m/s, reflects off walls
  std::vector<Config> waypoints;    // waypoints: closed loop, >= 2 points
  double speed = 0.0;               // waypoints: m/s along the loop
};

struct ObstacleSpec {
  Disc disc;  // position at t = 0
  Motion motion;
  bool known = true;  // part of the map before it is ever sensed
};

struct Robot {
  Config config;
  double speed = 1.0;   // m/s along the current path
  double radius = 0.0;  // physical footprint, used for true collision checks
};

struct Sensor {
  double range = 1.0;
  /// Drop out-of-range moving obstacles from the snapshot instead of
  /// remembering them at their last seen position.
  bool forget_out_of_range = false;
};

/// Full description of one runnable episode setup.
struct Scenario {
  std::string name;  // derived from the file name, not serialized
  Workspace workspace{0.0, 0.0, 1.0, 1.0};
  Config start;
  Config goal;
  Robot robot;
  Sensor sensor;
  PlannerParams planner;
  std::vector<ObstacleSpec> obstacles;
  double dt = 0.1;
  int horizon = 1000;
  std::vector<std::uint64_t> seeds;
};

/// Throws ConfigError describing the first violated constraint.
void validate_scenario(const Scenario& s);

/// Deterministic obstacle world with range-limited sensing and last-seen
/// memory for unknown obstacles. Positions are closed-form in t, so two
/// runs over the same step sequence are identical.
class World {
 public:
  explicit World(const Scenario& scenario);

  /// Obstacle disc i at time t.
  Disc disc_at(std::size_t i, double t) const;

  void advance_to(double t);
  double time() const { return time_; }
  const std::vector<Disc>& true_discs() const { return current_; }

  /// Snapshot seen from robot_pos at the current time. Initially-known
  /// obstacles always report their true position; unknown obstacles enter
  /// the map when their disc touches the sensing disc. Once sensed, a
  /// static obstacle is never forgotten, and a moving one is held at its
  /// last seen position while out of range (unless forgetting is enabled).
  ObstacleSnapshot sense(const Config& robot_pos);

  bool robot_collides(const Config& robot_pos, double robot_radius,
                      double t) const;

 private:
  Workspace workspace_;
  Sensor sensor_;
  std::vector<ObstacleSpec> specs_;
  std::vector<Disc> current_;
  std::vector<std::optional<Disc>> memory_;
  double time_ = 0.0;
};

enum class EpisodeStatus { reached_goal, collided, timeout };

const char* episode_status_name(EpisodeStatus s);

struct EpisodeResult {
  EpisodeStatus status = EpisodeStatus::timeout;
  int steps = 0;
  double distance_traveled = 0.0;
  std::vector<ReplanStats> cycle_stats;
  std::vector<TraceEvent> trace;
};

/// Position after moving speed*dt meters along the path polyline; clamps at
/// the final config. Without a path the robot holds position.
Config execute_step(const Robot& robot, const std::optional<Path>& path,
                    double dt);

/// Run one closed-loop episode: advance obstacles, sense, replan with the
/// chosen variant, execute, then check ground-truth collisions with a dt/10
/// sweep. Stops at the goal tolerance (one steer step), on collision, or at
/// the horizon. Emits one TraceEvent per executed step plus one for the
/// initial plan.
EpisodeResult run_episode(const Scenario& scenario, Variant variant,
                          std::uint64_t seed);

TraceMeta make_trace_meta(const Scenario& scenario, Variant variant,
                          std::uint64_t seed);

}  // namespace mrrt

#endif  // MRRT_SIMWORLD_HPP
