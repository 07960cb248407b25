#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mrrt/planner.hpp"
#include "oracles.hpp"

using namespace mrrt;

namespace {

ObstacleSnapshot make_snapshot(std::vector<Disc> discs = {}, double t = 0.0) {
  return ObstacleSnapshot{std::move(discs), t};
}

PlannerParams small_params(std::uint64_t seed, int budget = 20000) {
  PlannerParams p;
  p.eta = 0.5;
  p.goal_bias = 0.05;
  p.neighbor_radius = 1.0;
  p.sample_budget = budget;
  p.inflation = 0.2;
  p.rng_seed = seed;
  return p;
}

void check_path_valid(const Path& path, const Config& start, const Config& goal,
                      const ObstacleSnapshot& snapshot,
                      const PlannerParams& params) {
  REQUIRE(!path.points.empty());
  CHECK(path.points.front() == start);
  CHECK(path.points.back() == goal);
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Config& a = path.points[i];
    const Config& b = path.points[i + 1];
    CHECK(dist(a, b) <= params.eta + 1e-9);
    length += dist(a, b);
    for (const Disc& d : snapshot.discs)
      CHECK_FALSE(oracle::dense_segment_collides(a, b, d, params.inflation, 200));
  }
  CHECK(path.total_length == doctest::Approx(length));
}

}  // namespace

TEST_SUITE_BEGIN("planner");

TEST_CASE("params validation") {
  PlannerParams p = small_params(1);
  CHECK_NOTHROW(p.validate());
  p.neighbor_radius = 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = small_params(1);
  p.goal_bias = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = small_params(1);
  p.sample_budget = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  const Workspace w(0, 0, 30, 40);
  const PlannerParams d = PlannerParams::defaults_for(w);
  CHECK(d.eta == doctest::Approx(2.5));
  CHECK(d.neighbor_radius == doctest::Approx(5.0));
}

TEST_CASE("plan_initial finds valid paths in an empty workspace") {
  const Workspace w(0, 0, 10, 10);
  const Config start{1, 1}, goal{9, 9};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Planner planner(w, small_params(seed, 10000));
    const auto out = planner.plan_initial(start, goal, make_snapshot());
    REQUIRE(out.status == ReplanStatus::path_found);
    REQUIRE(out.path.has_value());
    check_path_valid(*out.path, start, goal, make_snapshot(), planner.params());
    CHECK(planner.forest().tree_of(planner.robot_node()) ==
          planner.forest().tree_of(planner.goal_node()));
    CHECK(out.stats.trees_before == 0);
    CHECK(out.stats.trees_after == 1);
  }
}

TEST_CASE("plan_initial rejects endpoints in collision") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(3));
  const auto blocked = make_snapshot({Disc{{9, 9}, 0.5}});
  CHECK_THROWS_AS(planner.plan_initial({1, 1}, {9, 9}, blocked),
                  InvalidEndpoint);
  CHECK_THROWS_AS(planner.plan_initial({9, 9}, {1, 1}, blocked),
                  InvalidEndpoint);
}

TEST_CASE("plan_initial exhausts its budget against a solid wall") {
  const Workspace w(0, 0, 10, 10);
  // Wall of discs across x = 5 with no gap wider than twice the inflation.
  std::vector<Disc> wall;
  for (double y = 0.0; y <= 10.0; y += 0.8) wall.push_back(Disc{{5.0, y}, 0.5});
  Planner planner(w, small_params(7, 3000));
  const auto out = planner.plan_initial({1, 5}, {9, 5}, make_snapshot(wall));
  CHECK(out.status == ReplanStatus::exhausted_budget);
  CHECK_FALSE(out.path.has_value());
  CHECK(out.stats.samples_drawn == 3000);
}

TEST_CASE("sense_and_prune is idempotent on a static snapshot") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(11));
  REQUIRE(planner.plan_initial({1, 1}, {9, 9}, make_snapshot()).status ==
          ReplanStatus::path_found);
  const auto snapshot = make_snapshot({Disc{{5, 5}, 1.0}});
  planner.sense_and_prune(snapshot);
  const auto again = planner.sense_and_prune(snapshot);
  CHECK(again.edges_removed == 0);
  CHECK(again.trees_created == 0);
}

TEST_CASE("sense_and_prune removes a covered edge and splits the tree") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(13));
  const auto out = planner.plan_initial({1, 1}, {9, 9}, make_snapshot());
  REQUIRE(out.status == ReplanStatus::path_found);
  // Drop a disc exactly onto the middle of the found path.
  const Config mid = out.path->points[out.path->points.size() / 2];
  const std::size_t trees = planner.forest().tree_count();
  const auto report = planner.sense_and_prune(make_snapshot({Disc{mid, 0.3}}));
  CHECK(report.edges_removed >= 1);
  CHECK(report.trees_created >= 1);
  CHECK(planner.forest().tree_count() == trees + report.trees_created);
  CHECK_FALSE(planner.cached_path().has_value());
}

TEST_CASE("sense_and_prune removes exactly what a per-edge sweep flags") {
  const Workspace w(0, 0, 10, 10);
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    Planner planner(w, small_params(seed));
    REQUIRE(planner.plan_initial({1, 1}, {9, 9}, make_snapshot()).status ==
            ReplanStatus::path_found);
    RandomStream rng(seed * 77 + 1);
    const std::vector<Disc> discs{
        Disc{{rng.uniform(0, 10), rng.uniform(0, 10)}, rng.uniform(0.3, 1.5)},
        Disc{{rng.uniform(0, 10), rng.uniform(0, 10)}, rng.uniform(0.3, 1.5)}};
    const Forest& f = planner.forest();
    std::vector<std::pair<NodeId, NodeId>> expected;
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const Node& n = f.node(static_cast<NodeId>(i));
      if (n.parent == kInvalidNode) continue;
      for (const Disc& d : discs) {
        if (segment_disc_collides(f.node(n.parent).config, n.config, d,
                                  planner.params().inflation)) {
          expected.emplace_back(std::min(n.parent, n.id),
                                std::max(n.parent, n.id));
          break;
        }
      }
    }
    std::sort(expected.begin(), expected.end());
    const auto before = oracle::undirected_edges(f);
    const auto report = planner.sense_and_prune(make_snapshot(discs));
    const auto after = oracle::undirected_edges(f);
    std::vector<std::pair<NodeId, NodeId>> removed;
    std::set_difference(before.begin(), before.end(), after.begin(),
                        after.end(), std::back_inserter(removed));
    CHECK(removed == expected);
    CHECK(report.edges_removed == expected.size());
    CHECK(oracle::forest_invariants_hold(f));
  }
}

TEST_CASE("regrow joins two trees through a gap sample") {
  // Tiny sampling box between two hand-built trees: any uniform sample
  // lands in the gap and must bridge both trees in one iteration.
  const Workspace gap(4.5, -0.5, 5.5, 0.5);
  PlannerParams p;
  p.eta = 1.0;
  p.goal_bias = 0.0;
  p.neighbor_radius = 2.0;
  p.sample_budget = 10;
  p.inflation = 0.0;
  p.rng_seed = 5;
  Planner planner(gap, p);
  planner.initialize({3, 0}, {7, 0});
  planner.forest().add_child(planner.robot_node(), {4, 0});
  planner.forest().add_child(planner.goal_node(), {6, 0});
  REQUIRE(planner.forest().tree_count() == 2);

  const auto out = planner.regrow(make_snapshot());
  CHECK(out.status == ReplanStatus::path_found);
  CHECK(out.stats.samples_drawn == 1);
  CHECK(out.stats.trees_before == 2);
  CHECK(out.stats.trees_after == 1);
  REQUIRE(out.path.has_value());
  CHECK(out.path->points.front() == Config{3, 0});
  CHECK(out.path->points.back() == Config{7, 0});
}

TEST_CASE("regrow returns immediately when already connected") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(17));
  REQUIRE(planner.plan_initial({1, 1}, {9, 9}, make_snapshot()).status ==
          ReplanStatus::path_found);
  const auto out = planner.regrow(make_snapshot());
  CHECK(out.status == ReplanStatus::path_found);
  CHECK(out.stats.samples_drawn == 0);
}

TEST_CASE("replan_cycle returns the cached path on an unchanged world") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(19));
  const auto snapshot = make_snapshot({Disc{{5, 2}, 1.0}});
  const auto initial = planner.plan_initial({1, 1}, {9, 9}, snapshot);
  REQUIRE(initial.status == ReplanStatus::path_found);

  // Robot advanced a little along the path; the world did not change.
  const Config robot = point_along(*initial.path, 0.2);
  const auto out = planner.replan_cycle(snapshot, robot);
  CHECK(out.status == ReplanStatus::path_found);
  CHECK(out.stats.samples_drawn == 0);
  CHECK(out.stats.edges_pruned == 0);
  REQUIRE(out.path.has_value());
  CHECK(out.path->points.front() == robot);
  CHECK(out.path->points.back() == Config{9, 9});
  // The trimmed cache is the old path minus the traversed prefix.
  CHECK(out.path->total_length ==
        doctest::Approx(initial.path->total_length - 0.2));
}

TEST_CASE("replan_cycle rejects a robot configuration in collision") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(23));
  REQUIRE(planner.plan_initial({1, 1}, {9, 9}, make_snapshot()).status ==
          ReplanStatus::path_found);
  CHECK_THROWS_AS(
      planner.replan_cycle(make_snapshot({Disc{{1, 1}, 0.5}}), {1, 1}),
      InvalidEndpoint);
}

TEST_CASE("replan_cycle reroutes after an obstacle crosses the path") {
  const Workspace w(0, 0, 10, 10);
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    Planner planner(w, small_params(seed));
    const auto initial = planner.plan_initial({1, 5}, {9, 5}, make_snapshot());
    REQUIRE(initial.status == ReplanStatus::path_found);
    const Config mid = initial.path->points[initial.path->points.size() / 2];
    const auto snapshot = make_snapshot({Disc{mid, 0.4}});
    const Config robot = point_along(*initial.path, 0.1);
    const auto out = planner.replan_cycle(snapshot, robot);
    CHECK(out.stats.edges_pruned >= 1);
    if (out.status == ReplanStatus::path_found) {
      check_path_valid(*out.path, robot, {9, 5}, snapshot, planner.params());
    }
    CHECK(oracle::forest_invariants_hold(planner.forest()));
  }
}

TEST_CASE("replan_cycle exhausts when the robot is walled in") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(41, 500));
  REQUIRE(planner.plan_initial({5, 5}, {9, 9}, make_snapshot()).status ==
          ReplanStatus::path_found);
  // Overlapping ring of discs around the robot, far enough not to touch it.
  std::vector<Disc> ring;
  for (int k = 0; k < 12; ++k) {
    const double a = 2.0 * 3.14159265358979 * k / 12;
    ring.push_back(
        Disc{{5.0 + 1.2 * std::cos(a), 5.0 + 1.2 * std::sin(a)}, 0.4});
  }
  const auto out = planner.replan_cycle(make_snapshot(ring), {5, 5});
  CHECK(out.status == ReplanStatus::exhausted_budget);
  CHECK_FALSE(out.path.has_value());
  CHECK(planner.forest().tree_of(planner.robot_node()) !=
        planner.forest().tree_of(planner.goal_node()));
}

TEST_CASE("scratch baseline discards the forest every cycle") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(43));
  REQUIRE(planner.plan_initial({1, 1}, {9, 9}, make_snapshot()).status ==
          ReplanStatus::path_found);
  for (int cycle = 0; cycle < 3; ++cycle) {
    const auto out = planner.baseline_scratch_replan(make_snapshot(), {1, 1});
    CHECK(out.stats.trees_before == 0);
    CHECK(out.stats.samples_drawn > 0);
    CHECK(out.status == ReplanStatus::path_found);
  }
}

TEST_CASE("main-tree baseline deletes components without robot or goal") {
  const Workspace w(0, 0, 10, 10);
  PlannerParams p = small_params(47, 50);
  Planner planner(w, p);
  planner.initialize({1, 1}, {9, 9});
  // Third component away from both.
  const NodeId orphan = planner.forest().add_root({5, 9});
  planner.forest().add_child(orphan, {5.3, 9});
  REQUIRE(planner.forest().tree_count() == 3);

  planner.baseline_main_tree_replan(make_snapshot(), {1, 1});
  const Forest& f = planner.forest();
  for (std::size_t i = 0; i < f.node_count(); ++i)
    CHECK_FALSE(f.node(static_cast<NodeId>(i)).config == Config{5, 9});
  CHECK(oracle::forest_invariants_hold(f));
}

TEST_CASE("main-tree baseline matches mrrt when nothing was pruned") {
  const Workspace w(0, 0, 10, 10);
  Planner mrrt_planner(w, small_params(53));
  Planner mt_planner(w, small_params(53));
  const auto a = mrrt_planner.plan_initial({1, 1}, {9, 9}, make_snapshot());
  const auto b = mt_planner.plan_initial({1, 1}, {9, 9}, make_snapshot());
  REQUIRE(a.status == ReplanStatus::path_found);
  REQUIRE(b.status == ReplanStatus::path_found);
  const Config robot = point_along(*a.path, 0.3);
  const auto oa = mrrt_planner.replan_cycle(make_snapshot(), robot);
  const auto ob = mt_planner.baseline_main_tree_replan(make_snapshot(), robot);
  CHECK(oa.status == ob.status);
  CHECK(oa.stats.samples_drawn == ob.stats.samples_drawn);
  REQUIRE((oa.path.has_value() && ob.path.has_value()));
  REQUIRE(oa.path->points.size() == ob.path->points.size());
  for (std::size_t i = 0; i < oa.path->points.size(); ++i)
    CHECK(oa.path->points[i] == ob.path->points[i]);
  CHECK(mrrt_planner.forest().node_count() ==
        mt_planner.forest().node_count());
}

TEST_CASE("identical seeds produce identical plans") {
  const Workspace w(0, 0, 10, 10);
  const auto snapshot = make_snapshot({Disc{{4, 4}, 1.0}, Disc{{7, 6}, 0.8}});
  Planner p1(w, small_params(61));
  Planner p2(w, small_params(61));
  const auto o1 = p1.plan_initial({1, 1}, {9, 9}, snapshot);
  const auto o2 = p2.plan_initial({1, 1}, {9, 9}, snapshot);
  REQUIRE(o1.status == o2.status);
  CHECK(o1.stats.samples_drawn == o2.stats.samples_drawn);
  REQUIRE(o1.path.has_value());
  REQUIRE(o1.path->points.size() == o2.path->points.size());
  for (std::size_t i = 0; i < o1.path->points.size(); ++i)
    CHECK(o1.path->points[i] == o2.path->points[i]);
  CHECK(p1.forest().node_count() == p2.forest().node_count());
}

TEST_CASE("mrrt keeps every node across replan cycles") {
  const Workspace w(0, 0, 10, 10);
  Planner planner(w, small_params(67));
  const auto initial = planner.plan_initial({1, 5}, {9, 5}, make_snapshot());
  REQUIRE(initial.status == ReplanStatus::path_found);
  Config robot = {1, 5};
  Path current = *initial.path;
  for (int cycle = 1; cycle <= 10; ++cycle) {
    // A disc sweeping vertically across the corridor.
    const double y = 1.0 + 0.8 * cycle;
    const auto snapshot = make_snapshot({Disc{{5.0, y}, 1.0}});
    const std::size_t before = planner.forest().node_count();
    robot = point_along(current, 0.2);
    ReplanOutcome out;
    try {
      out = planner.replan_cycle(snapshot, robot);
    } catch (const InvalidEndpoint&) {
      continue;
    }
    CHECK(planner.forest().node_count() >= before);  // nothing ever deleted
    if (out.path) current = *out.path;
    CHECK(oracle::forest_invariants_hold(planner.forest()));
  }
}

TEST_CASE("mrrt reconnects with fewer samples than scratch replanning") {
  const Workspace w(0, 0, 10, 10);
  std::vector<int> mrrt_samples, scratch_samples;
  for (std::uint64_t seed = 70; seed < 80; ++seed) {
    Planner mrrt_planner(w, small_params(seed));
    Planner scratch_planner(w, small_params(seed));
    const auto initial =
        mrrt_planner.plan_initial({1, 5}, {9, 5}, make_snapshot());
    REQUIRE(initial.status == ReplanStatus::path_found);
    REQUIRE(scratch_planner.plan_initial({1, 5}, {9, 5}, make_snapshot())
                .status == ReplanStatus::path_found);
    const Config mid = initial.path->points[initial.path->points.size() / 2];
    const auto snapshot = make_snapshot({Disc{mid, 0.4}});
    const Config robot = point_along(*initial.path, 0.1);
    const auto a = mrrt_planner.replan_cycle(snapshot, robot);
    ReplanOutcome b;
    try {
      b = scratch_planner.baseline_scratch_replan(snapshot, robot);
    } catch (const InvalidEndpoint&) {
      continue;
    }
    mrrt_samples.push_back(a.stats.samples_drawn);
    scratch_samples.push_back(b.stats.samples_drawn);
  }
  REQUIRE(mrrt_samples.size() >= 8);
  std::sort(mrrt_samples.begin(), mrrt_samples.end());
  std::sort(scratch_samples.begin(), scratch_samples.end());
  CHECK(mrrt_samples[mrrt_samples.size() / 2] <
        scratch_samples[scratch_samples.size() / 2]);
}

TEST_SUITE_END();
