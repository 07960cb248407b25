#include "mrrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mrrt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Build a Path from forest waypoints, splitting any segment longer than
/// eta into equal pieces so the spacing contract holds even across
/// tree-joining edges (those may be up to neighbor_radius long).
Path make_path(const std::vector<Config>& waypoints, double eta) {
  Path path;
  for (const Config& c : waypoints) {
    if (!path.points.empty()) {
      const Config& prev = path.points.back();
      if (prev == c) continue;
      const double d = dist(prev, c);
      const int pieces = std::max(1, static_cast<int>(std::ceil(d / eta)));
      for (int i = 1; i <= pieces; ++i) {
        const double t = static_cast<double>(i) / pieces;
        path.points.push_back(
            {prev.x + t * (c.x - prev.x), prev.y + t * (c.y - prev.y)});
      }
      path.total_length += d;
    } else {
      path.points.push_back(c);
    }
  }
  return path;
}

}  // namespace

void PlannerParams::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("params: eta must be positive");
  if (!(goal_bias >= 0.0 && goal_bias < 1.0))
    throw std::invalid_argument("params: goal_bias must be in [0, 1)");
  if (!(neighbor_radius >= eta))
    throw std::invalid_argument("params: neighbor_radius must be >= eta");
  if (sample_budget <= 0)
    throw std::invalid_argument("params: sample_budget must be positive");
  if (!(inflation >= 0.0))
    throw std::invalid_argument("params: inflation must be >= 0");
}

PlannerParams PlannerParams::defaults_for(const Workspace& w) {
  PlannerParams p;
  p.eta = w.diagonal() / 20.0;
  p.neighbor_radius = 2.0 * p.eta;
  return p;
}

Config point_along(const Path& path, double s) {
  if (path.points.empty()) return Config{};
  Config cur = path.points.front();
  if (s <= 0.0) return cur;
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    const Config& next = path.points[i];
    const double seg = dist(cur, next);
    if (s < seg) {
      const double t = s / seg;
      return {cur.x + t * (next.x - cur.x), cur.y + t * (next.y - cur.y)};
    }
    s -= seg;
    cur = next;
  }
  return cur;  // past the end: clamp to the goal
}

std::optional<Path> trim_path_to(const Path& path, const Config& position,
                                 double eps) {
  if (path.points.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Config& a = path.points[i];
    const Config& b = path.points[i + 1];
    if (point_segment_dist(position, a, b) > eps) continue;
    Path out;
    out.points.push_back(position);
    for (std::size_t j = i + 1; j < path.points.size(); ++j) {
      if (path.points[j] == out.points.back()) continue;
      out.points.push_back(path.points[j]);
    }
    for (std::size_t j = 0; j + 1 < out.points.size(); ++j)
      out.total_length += dist(out.points[j], out.points[j + 1]);
    return out;
  }
  if (path.points.size() == 1 && dist(path.points[0], position) <= eps) {
    return Path{{position}, 0.0};
  }
  return std::nullopt;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::mrrt: return "mrrt";
    case Variant::scratch: return "scratch";
    case Variant::main_tree: return "main_tree";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "mrrt") return Variant::mrrt;
  if (name == "scratch") return Variant::scratch;
  if (name == "main_tree") return Variant::main_tree;
  return std::nullopt;
}

Planner::Planner(const Workspace& workspace, const PlannerParams& params)
    : workspace_(workspace),
      params_(params),
      rng_(params.rng_seed),
      forest_(params.eta) {
  params_.validate();
  forest_.set_journal(&journal_);
}

void Planner::initialize(const Config& start, const Config& goal) {
  journal_.clear();
  journal_.reset = true;
  forest_ = Forest(params_.eta);
  forest_.set_journal(&journal_);
  robot_node_ = forest_.add_root(start);
  goal_node_ = forest_.add_root(goal);
  goal_ = goal;
  cached_path_.reset();
  initialized_ = true;
}

bool Planner::point_free(const Config& c, const ObstacleSnapshot& snap) const {
  for (const Disc& d : snap.discs)
    if (point_in_disc(c, d, params_.inflation)) return false;
  return true;
}

bool Planner::segment_free(const Config& a, const Config& b,
                           const ObstacleSnapshot& snap) const {
  for (const Disc& d : snap.discs)
    if (segment_disc_collides(a, b, d, params_.inflation)) return false;
  return true;
}

bool Planner::connected() const {
  return forest_.tree_of(robot_node_) == forest_.tree_of(goal_node_);
}

Path Planner::extract_path() {
  const std::vector<NodeId> ids = forest_.path_between(robot_node_, goal_node_);
  std::vector<Config> waypoints;
  waypoints.reserve(ids.size());
  for (NodeId id : ids) waypoints.push_back(forest_.node(id).config);
  Path path = make_path(waypoints, params_.eta);
  cached_path_ = path;
  return path;
}

ReplanOutcome Planner::plan_initial(const Config& start, const Config& goal,
                                    const ObstacleSnapshot& snapshot) {
  const auto t0 = Clock::now();
  if (!point_free(start, snapshot))
    throw InvalidEndpoint("plan_initial: start is in collision");
  if (!point_free(goal, snapshot))
    throw InvalidEndpoint("plan_initial: goal is in collision");
  initialize(start, goal);

  ReplanOutcome out;
  ReplanStats& stats = out.stats;
  stats.trees_before = 0;

  const TreeId robot_tree = forest_.tree_of(robot_node_);
  const auto in_robot_tree = [&](NodeId id) {
    const Node& n = forest_.node(id);
    return !n.blocked && n.tree == robot_tree;
  };

  bool found = false;
  while (stats.samples_drawn < params_.sample_budget) {
    ++stats.samples_drawn;
    const Config q = rng_.chance(params_.goal_bias)
                         ? goal
                         : sample_uniform(workspace_, rng_);
    const auto near = forest_.index().nearest(q, in_robot_tree);
    if (!near) continue;
    const Config& near_cfg = forest_.node(*near).config;
    if (near_cfg == q) continue;
    const Config new_cfg = steer(near_cfg, q, params_.eta);
    if (!segment_free(near_cfg, new_cfg, snapshot)) continue;
    const NodeId added = forest_.add_child(*near, new_cfg);
    if (dist(new_cfg, goal) <= params_.eta) {
      ++stats.connect_attempts;
      if (segment_free(new_cfg, goal, snapshot)) {
        forest_.merge(goal_node_, added);
        found = true;
        break;
      }
    }
  }

  if (found) {
    out.status = ReplanStatus::path_found;
    out.path = extract_path();
  }
  stats.trees_after = forest_.tree_count();
  stats.elapsed = seconds_since(t0);
  return out;
}

PruneReport Planner::sense_and_prune(const ObstacleSnapshot& snapshot) {
  const PruneReport report = forest_.prune_colliding_edges(
      [&](const Config& a, const Config& b) {
        return !segment_free(a, b, snapshot);
      });
  forest_.refresh_blocked(
      [&](const Config& c) { return !point_free(c, snapshot); });
  if (cached_path_) {
    const auto& pts = cached_path_->points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!segment_free(pts[i], pts[i + 1], snapshot)) {
        cached_path_.reset();
        break;
      }
    }
  }
  return report;
}

int Planner::regrow_loop(const ObstacleSnapshot& snapshot, ReplanStats& stats) {
  const auto unblocked = [&](NodeId id) { return !forest_.node(id).blocked; };
  int drawn = 0;
  while (!connected()) {
    if (stats.samples_drawn >= params_.sample_budget) return drawn;
    ++stats.samples_drawn;
    ++drawn;
    const Config q = rng_.chance(params_.goal_bias)
                         ? goal_
                         : sample_uniform(workspace_, rng_);
    const std::vector<NodeId> hits =
        forest_.index().within_radius(q, params_.neighbor_radius, unblocked);
    if (!hits.empty()) {
      // Hits come back sorted by distance, so the first occurrence of each
      // tree label is that tree's nearest node and hits.front() is the
      // globally nearest one.
      std::vector<std::pair<TreeId, NodeId>> per_tree;
      for (NodeId h : hits) {
        const TreeId t = forest_.tree_of(h);
        bool seen = false;
        for (const auto& [pt, pn] : per_tree)
          if (pt == t) { seen = true; break; }
        if (!seen) per_tree.emplace_back(t, h);
      }
      const NodeId anchor = per_tree.front().second;
      const Config& anchor_cfg = forest_.node(anchor).config;
      if (anchor_cfg == q) continue;
      const Config new_cfg = steer(anchor_cfg, q, params_.eta);
      if (!segment_free(anchor_cfg, new_cfg, snapshot)) continue;
      const NodeId added = forest_.add_child(anchor, new_cfg);
      for (std::size_t i = 1; i < per_tree.size(); ++i) {
        const NodeId bridge = per_tree[i].second;
        if (forest_.tree_of(bridge) == forest_.tree_of(added)) continue;
        const Config& bridge_cfg = forest_.node(bridge).config;
        ++stats.connect_attempts;
        if (dist(bridge_cfg, new_cfg) <= params_.neighbor_radius &&
            segment_free(bridge_cfg, new_cfg, snapshot)) {
          forest_.reroot(bridge);
          forest_.merge(bridge, added);
        }
      }
    } else {
      // Nothing in the neighborhood: classic RRT extend from the globally
      // nearest unblocked node.
      const auto near = forest_.index().nearest(q, unblocked);
      if (!near) continue;
      const Config& near_cfg = forest_.node(*near).config;
      if (near_cfg == q) continue;
      const Config new_cfg = steer(near_cfg, q, params_.eta);
      if (segment_free(near_cfg, new_cfg, snapshot))
        forest_.add_child(*near, new_cfg);
    }
  }
  return drawn;
}

ReplanOutcome Planner::regrow(const ObstacleSnapshot& snapshot) {
  const auto t0 = Clock::now();
  ReplanOutcome out;
  out.stats.trees_before = forest_.tree_count();
  regrow_loop(snapshot, out.stats);
  if (connected()) {
    out.status = ReplanStatus::path_found;
    out.path = extract_path();
  }
  out.stats.trees_after = forest_.tree_count();
  out.stats.elapsed = seconds_since(t0);
  return out;
}

void Planner::ensure_robot_node(const Config& robot_config,
                                const ObstacleSnapshot& snapshot) {
  const auto exact = forest_.index().nearest(robot_config);
  if (exact && forest_.node(*exact).config == robot_config) {
    robot_node_ = *exact;
    return;
  }
  const auto unblocked = [&](NodeId id) { return !forest_.node(id).blocked; };
  NodeId parent = kInvalidNode;
  for (NodeId cand : forest_.index().within_radius(
           robot_config, params_.neighbor_radius, unblocked)) {
    if (segment_free(robot_config, forest_.node(cand).config, snapshot)) {
      parent = cand;
      break;
    }
  }
  if (parent == kInvalidNode) {
    const auto global = forest_.index().nearest(robot_config, unblocked);
    if (global &&
        segment_free(robot_config, forest_.node(*global).config, snapshot))
      parent = *global;
  }
  robot_node_ = parent == kInvalidNode
                    ? forest_.add_root(robot_config)
                    : forest_.add_child(parent, robot_config);
}

ReplanOutcome Planner::run_cycle(const ObstacleSnapshot& snapshot,
                                 const Config& robot_config,
                                 bool delete_other_trees) {
  const auto t0 = Clock::now();
  if (!point_free(robot_config, snapshot))
    throw InvalidEndpoint("replan: robot configuration is in collision");

  // Advance the cached path to the robot's progress along it; the part
  // behind the robot no longer matters for validity.
  if (cached_path_) {
    auto trimmed = trim_path_to(*cached_path_, robot_config);
    if (trimmed)
      cached_path_ = std::move(*trimmed);
    else
      cached_path_.reset();
  }

  ensure_robot_node(robot_config, snapshot);

  ReplanOutcome out;
  out.stats.trees_before = forest_.tree_count();
  const PruneReport report = sense_and_prune(snapshot);
  out.stats.edges_pruned = report.edges_removed;

  if (delete_other_trees) {
    std::vector<TreeId> keep{forest_.tree_of(robot_node_)};
    const TreeId goal_tree = forest_.tree_of(goal_node_);
    if (goal_tree != keep.front()) keep.push_back(goal_tree);
    if (forest_.tree_count() > keep.size()) {
      journal_.clear();
      journal_.reset = true;
      std::vector<NodeId> id_map;
      forest_ = forest_.subforest(keep, id_map);
      robot_node_ = id_map[robot_node_];
      goal_node_ = id_map[goal_node_];
    }
  }

  if (connected() && cached_path_) {
    out.status = ReplanStatus::path_found;
    out.path = *cached_path_;
  } else {
    regrow_loop(snapshot, out.stats);
    if (connected()) {
      out.status = ReplanStatus::path_found;
      out.path = extract_path();
    } else {
      cached_path_.reset();
    }
  }
  out.stats.trees_after = forest_.tree_count();
  out.stats.elapsed = seconds_since(t0);
  return out;
}

ReplanOutcome Planner::replan_cycle(const ObstacleSnapshot& snapshot,
                                    const Config& robot_config) {
  return run_cycle(snapshot, robot_config, false);
}

ReplanOutcome Planner::baseline_main_tree_replan(
    const ObstacleSnapshot& snapshot, const Config& robot_config) {
  return run_cycle(snapshot, robot_config, true);
}

ReplanOutcome Planner::baseline_scratch_replan(const ObstacleSnapshot& snapshot,
                                               const Config& robot_config) {
  // Discarding the forest and starting over is exactly initial planning
  // from the robot's current configuration.
  return plan_initial(robot_config, goal_, snapshot);
}

ReplanOutcome Planner::replan(Variant variant, const ObstacleSnapshot& snapshot,
                              const Config& robot_config) {
  switch (variant) {
    case Variant::scratch:
      return baseline_scratch_replan(snapshot, robot_config);
    case Variant::main_tree:
      return baseline_main_tree_replan(snapshot, robot_config);
    case Variant::mrrt:
    default:
      return replan_cycle(snapshot, robot_config);
  }
}

ForestJournal Planner::drain_journal() {
  ForestJournal out = std::move(journal_);
  journal_.clear();
  forest_.set_journal(&journal_);
  return out;
}

}  // namespace mrrt
