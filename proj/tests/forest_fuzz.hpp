// Randomized forest mutation driver shared by the unit and acceptance
// suites. Each step performs one valid random operation; prune steps also
// return the edge set an exhaustive per-edge scan expected to be removed.
#ifndef MRRT_TESTS_FOREST_FUZZ_HPP
#define MRRT_TESTS_FOREST_FUZZ_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "mrrt/forest.hpp"
#include "mrrt/geometry.hpp"
#include "oracles.hpp"

namespace fuzz {

struct StepResult {
  enum class Op { add_root, add_child, detach, reroot, merge, prune } op;
  bool pruned = false;
  mrrt::PruneReport report;
  std::vector<std::pair<mrrt::NodeId, mrrt::NodeId>> expected_removed;
  std::vector<std::pair<mrrt::NodeId, mrrt::NodeId>> actually_removed;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
};

inline mrrt::Config random_config(mrrt::RandomStream& rng) {
  return {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
}

inline mrrt::NodeId random_node(const mrrt::Forest& f,
                                mrrt::RandomStream& rng) {
  return static_cast<mrrt::NodeId>(rng.next_u64() % f.node_count());
}

inline StepResult fuzz_step(mrrt::Forest& f, mrrt::RandomStream& rng) {
  StepResult result;
  result.nodes_before = f.node_count();
  const double roll = f.node_count() == 0 ? 0.0 : rng.uniform01();

  if (roll < 0.28) {
    result.op = StepResult::Op::add_root;
    f.add_root(random_config(rng));
  } else if (roll < 0.70) {
    result.op = StepResult::Op::add_child;
    f.add_child(random_node(f, rng), random_config(rng));
  } else if (roll < 0.80) {
    result.op = StepResult::Op::detach;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const mrrt::NodeId c = random_node(f, rng);
      if (f.node(c).parent == mrrt::kInvalidNode) continue;
      f.detach_edge(f.node(c).parent, c);
      break;
    }
  } else if (roll < 0.88) {
    result.op = StepResult::Op::reroot;
    f.reroot(random_node(f, rng));
  } else if (roll < 0.95) {
    result.op = StepResult::Op::merge;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const mrrt::NodeId root = f.root_of(random_node(f, rng));
      const mrrt::NodeId target = random_node(f, rng);
      if (f.tree_of(root) == f.tree_of(target)) continue;
      f.merge(root, target);
      break;
    }
  } else {
    result.op = StepResult::Op::prune;
    result.pruned = true;
    const mrrt::Disc disc{random_config(rng), rng.uniform(0.5, 4.0)};
    // Exhaustive per-edge expectation, computed before the call.
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const mrrt::Node& n = f.node(static_cast<mrrt::NodeId>(i));
      if (n.parent == mrrt::kInvalidNode) continue;
      if (mrrt::segment_disc_collides(f.node(n.parent).config, n.config, disc,
                                      0.0))
        result.expected_removed.emplace_back(
            std::min(n.parent, n.id), std::max(n.parent, n.id));
    }
    std::sort(result.expected_removed.begin(), result.expected_removed.end());
    const auto before = oracle::undirected_edges(f);
    result.report = f.prune_colliding_edges(
        [&](const mrrt::Config& a, const mrrt::Config& b) {
          return mrrt::segment_disc_collides(a, b, disc, 0.0);
        });
    const auto after = oracle::undirected_edges(f);
    std::set_difference(before.begin(), before.end(), after.begin(),
                        after.end(),
                        std::back_inserter(result.actually_removed));
  }
  result.nodes_after = f.node_count();
  return result;
}

}  // namespace fuzz

#endif  // MRRT_TESTS_FOREST_FUZZ_HPP
