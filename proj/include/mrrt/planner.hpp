#ifndef MRRT_PLANNER_HPP
#define MRRT_PLANNER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrrt/forest.hpp"
#include "mrrt/geometry.hpp"

namespace mrrt {

/// Free parameters of the replanner.
struct PlannerParams {
  double eta = 1.0;              // steer step
  double goal_bias = 0.05;       // probability of sampling the goal
  double neighbor_radius = 2.0;  // tree-joining neighborhood around a sample
  int sample_budget = 20000;     // samples per replan cycle
  double inflation = 0.0;        // robot radius + safety margin
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;

  /// Conventional settings scaled to the workspace: eta is 1/20 of the
  /// diagonal and the joining radius twice that.
  static PlannerParams defaults_for(const Workspace& w);
};

/// Obstacles known to the planner at one instant.
struct ObstacleSnapshot {
  std::vector<Disc> discs;
  double time = 0.0;
};

/// Piecewise-linear route from the robot to the goal. Consecutive points are
/// never farther apart than eta (long tree edges are subdivided on
/// extraction).
struct Path {
  std::vector<Config> points;
  double total_length = 0.0;
};

/// Position reached after moving `s` meters along the path from its start;
/// clamps at the final point.
Config point_along(const Path& path, double s);

/// Path with the prefix up to `position` removed, so it starts exactly
/// there. `position` must lie on the path (within eps of some segment);
/// returns nullopt otherwise.
std::optional<Path> trim_path_to(const Path& path, const Config& position,
                                 double eps = 1e-9);

enum class ReplanStatus { path_found, exhausted_budget };

struct ReplanStats {
  int samples_drawn = 0;
  std::size_t edges_pruned = 0;
  std::size_t trees_before = 0;
  std::size_t trees_after = 0;
  int connect_attempts = 0;
  double elapsed = 0.0;  // seconds, replan body only
};

struct ReplanOutcome {
  ReplanStatus status = ReplanStatus::exhausted_budget;
  std::optional<Path> path;
  ReplanStats stats;
};

/// Start, goal or robot configuration lies inside a known inflated obstacle.
struct InvalidEndpoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Variant { mrrt, scratch, main_tree };

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

/// Online replanner over a disjoint forest. One instance per episode;
/// mutation and queries must be externally serialized.
///
/// The MRRT cycle is: make sure the robot's configuration is a forest node,
/// prune edges that collide with the known obstacles, and if robot and goal
/// fell into different trees, sample to rejoin them. Samples are connected
/// to every disjoint tree found in their neighborhood, which is what lets
/// severed structure be reused instead of regrown.
class Planner {
 public:
  Planner(const Workspace& workspace, const PlannerParams& params);

  /// Discard any existing forest and seed two roots: the robot tree at
  /// `start` and a goal tree at `goal`. A found solution is then exactly
  /// the event that both nodes share a tree label.
  void initialize(const Config& start, const Config& goal);

  /// Goal-biased RRT from scratch until the goal root is absorbed or the
  /// budget runs out. Throws InvalidEndpoint when start or goal collides
  /// with the snapshot.
  ReplanOutcome plan_initial(const Config& start, const Config& goal,
                             const ObstacleSnapshot& snapshot);

  /// Remove every tree edge colliding with the snapshot, refresh node
  /// blocked flags, and drop the cached path if any of its segments now
  /// collide. Nodes are never removed.
  PruneReport sense_and_prune(const ObstacleSnapshot& snapshot);

  /// Sample until robot and goal trees rejoin or the budget is exhausted.
  /// Each sample is joined to every disjoint tree in its neighborhood:
  /// the globally nearest hit becomes the new node's parent, and each other
  /// hit tree is rerooted at its nearest hit and merged beneath the new
  /// node when the bridging segment is short enough and collision free.
  /// Samples with no neighborhood hit fall back to a classic RRT extend.
  ReplanOutcome regrow(const ObstacleSnapshot& snapshot);

  /// One MRRT reactive cycle: ensure a node at robot_config, prune against
  /// the snapshot, then either return the (trimmed) cached path or regrow.
  /// Throws InvalidEndpoint when robot_config collides with the snapshot.
  ReplanOutcome replan_cycle(const ObstacleSnapshot& snapshot,
                             const Config& robot_config);

  /// Baseline: drop the whole forest and plan from scratch this cycle.
  ReplanOutcome baseline_scratch_replan(const ObstacleSnapshot& snapshot,
                                        const Config& robot_config);

  /// Baseline: prune, then delete every component that contains neither the
  /// robot nor the goal node before regrowing over the survivors.
  ReplanOutcome baseline_main_tree_replan(const ObstacleSnapshot& snapshot,
                                          const Config& robot_config);

  ReplanOutcome replan(Variant variant, const ObstacleSnapshot& snapshot,
                       const Config& robot_config);

  bool initialized() const { return initialized_; }
  Forest& forest() { return forest_; }
  const Forest& forest() const { return forest_; }
  NodeId robot_node() const { return robot_node_; }
  NodeId goal_node() const { return goal_node_; }
  const Config& goal() const { return goal_; }
  const Workspace& workspace() const { return workspace_; }
  const PlannerParams& params() const { return params_; }
  const std::optional<Path>& cached_path() const { return cached_path_; }

  /// Structural changes since the last drain, for trace emission.
  ForestJournal drain_journal();

 private:
  bool point_free(const Config& c, const ObstacleSnapshot& snap) const;
  bool segment_free(const Config& a, const Config& b,
                    const ObstacleSnapshot& snap) const;
  bool connected() const;
  Path extract_path();
  void ensure_robot_node(const Config& robot_config,
                         const ObstacleSnapshot& snapshot);
  int regrow_loop(const ObstacleSnapshot& snapshot, ReplanStats& stats);
  ReplanOutcome run_cycle(const ObstacleSnapshot& snapshot,
                          const Config& robot_config, bool delete_other_trees);

  Workspace workspace_;
  PlannerParams params_;
  RandomStream rng_;
  ForestJournal journal_;
  Forest forest_;
  Config goal_;
  NodeId robot_node_ = kInvalidNode;
  NodeId goal_node_ = kInvalidNode;
  std::optional<Path> cached_path_;
  bool initialized_ = false;
};

}  // namespace mrrt

#endif  // MRRT_PLANNER_HPP
