#ifndef MRRT_FOREST_HPP
#define MRRT_FOREST_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "mrrt/geometry.hpp"
#include "mrrt/spatial_index.hpp"

namespace mrrt {

/// Component label. Canonically the smallest NodeId in the component,
/// recomputed whenever a split or merge changes the membership.
using TreeId = NodeId;

struct Node {
  NodeId id = kInvalidNode;
  Config config;
  NodeId parent = kInvalidNode;  // kInvalidNode marks a root
  std::vector<NodeId> children;
  TreeId tree = kInvalidNode;
  bool blocked = false;

  bool is_root() const { return parent == kInvalidNode; }
};

struct PruneReport {
  std::size_t edges_removed = 0;
  std::size_t trees_created = 0;
};

/// Mutation log consumed by trace emission. When attached, every structural
/// change is appended; `reset` marks that the whole forest was replaced and
/// any previously seen state should be discarded before applying the rest.
struct ForestJournal {
  struct NodeAdd {
    NodeId id;
    Config config;
  };
  bool reset = false;
  std::vector<NodeAdd> nodes_added;
  std::vector<std::pair<NodeId, NodeId>> edges_added;
  std::vector<std::pair<NodeId, NodeId>> edges_removed;

  void clear() {
    reset = false;
    nodes_added.clear();
    edges_added.clear();
    edges_removed.clear();
  }
  bool empty() const {
    return !reset && nodes_added.empty() && edges_added.empty() &&
           edges_removed.empty();
  }
};

/// Disjoint forest of configurations with parent links and component labels.
/// Nodes are arena-allocated with dense ids and are never removed; pruning
/// detaches edges only. A companion grid index answers nearest/radius
/// queries over all nodes ever added.
class Forest {
 public:
  using EdgePredicate = std::function<bool(const Config&, const Config&)>;
  using NodePredicate = std::function<bool(const Config&)>;

  explicit Forest(double index_cell_size);

  NodeId add_root(const Config& config);

  /// New node below `parent`, inheriting its component label.
  /// Throws std::out_of_range on an unknown parent.
  NodeId add_child(NodeId parent, const Config& config);

  /// Cut the parent->child edge; the child side becomes a separate tree and
  /// both sides get canonical labels. Throws std::out_of_range on unknown
  /// ids, std::invalid_argument when the edge does not exist.
  void detach_edge(NodeId parent, NodeId child);

  /// Make n the root of its tree by reversing parent links on the old
  /// root->n path. Node set, undirected edge set and label are unchanged.
  void reroot(NodeId n);

  /// Attach the tree rooted at child_root below new_parent. The merged
  /// component takes the canonical (smallest-id) label of the two.
  /// Throws std::invalid_argument when child_root is not a root or both
  /// nodes already share a tree (which would create a cycle).
  void merge(NodeId child_root, NodeId new_parent);

  /// Remove exactly the edges whose endpoint configs satisfy the predicate;
  /// no node is removed, labels are recomputed for every affected component.
  PruneReport prune_colliding_edges(const EdgePredicate& collides);

  /// Re-evaluate every node's blocked flag with the given test.
  void refresh_blocked(const NodePredicate& blocked);

  /// Throws std::out_of_range on an unknown id.
  TreeId tree_of(NodeId n) const;

  /// Unique simple tree path from a to b (inclusive), found through the
  /// lowest common ancestor under the current rooting.
  /// Throws std::invalid_argument when a and b are in different trees.
  std::vector<NodeId> path_between(NodeId a, NodeId b) const;

  const Node& node(NodeId n) const;
  std::size_t node_count() const { return arena_.size(); }
  std::size_t tree_count() const { return tree_count_; }
  const GridIndex& index() const { return index_; }
  double index_cell_size() const { return cell_; }

  /// Root of the tree containing n, by walking parent links.
  NodeId root_of(NodeId n) const;

  /// Fresh forest holding copies of the listed components only, with dense
  /// re-assigned ids. id_map maps old ids to new ones (kInvalidNode when the
  /// node was not kept). Structure, configs and blocked flags carry over.
  Forest subforest(const std::vector<TreeId>& keep,
                   std::vector<NodeId>& id_map) const;

  /// Attach or detach the mutation log. The forest does not own it.
  void set_journal(ForestJournal* journal) { journal_ = journal; }

 private:
  Node& mutable_node(NodeId n);
  void unlink(Node& parent, Node& child);
  /// Visit the component reachable from `root` via children links and give
  /// every node its canonical smallest-id label.
  void relabel_from_root(NodeId root);
  /// Stamp an explicit label onto the subtree reachable from `root`.
  void assign_label(NodeId root, TreeId label);

  double cell_;
  std::vector<Node> arena_;
  std::size_t tree_count_ = 0;
  GridIndex index_;
  ForestJournal* journal_ = nullptr;
  mutable std::vector<NodeId> scratch_;  // reused traversal stack
};

}  // namespace mrrt

#endif  // MRRT_FOREST_HPP
