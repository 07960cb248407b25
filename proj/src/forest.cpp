#include "mrrt/forest.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrrt {

Forest::Forest(double index_cell_size)
    : cell_(index_cell_size), index_(index_cell_size) {}

Node& Forest::mutable_node(NodeId n) {
  if (n >= arena_.size()) throw std::out_of_range("forest: unknown node id");
  return arena_[n];
}

const Node& Forest::node(NodeId n) const {
  if (n >= arena_.size()) throw std::out_of_range("forest: unknown node id");
  return arena_[n];
}

NodeId Forest::add_root(const Config& config) {
  const NodeId id = static_cast<NodeId>(arena_.size());
  Node n;
  n.id = id;
  n.config = config;
  n.tree = id;  // singleton component, label is its own id
  arena_.push_back(std::move(n));
  index_.insert(id, config);
  ++tree_count_;
  if (journal_) journal_->nodes_added.push_back({id, config});
  return id;
}

NodeId Forest::add_child(NodeId parent, const Config& config) {
  Node& p = mutable_node(parent);
  const NodeId id = static_cast<NodeId>(arena_.size());
  Node n;
  n.id = id;
  n.config = config;
  n.parent = parent;
  // A fresh id is larger than every id in the component, so the canonical
  // label is unaffected.
  n.tree = p.tree;
  p.children.push_back(id);
  arena_.push_back(std::move(n));
  index_.insert(id, config);
  if (journal_) {
    journal_->nodes_added.push_back({id, config});
    journal_->edges_added.emplace_back(parent, id);
  }
  return id;
}

void Forest::unlink(Node& parent, Node& child) {
  auto it = std::find(parent.children.begin(), parent.children.end(), child.id);
  parent.children.erase(it);
  child.parent = kInvalidNode;
  if (journal_) journal_->edges_removed.emplace_back(parent.id, child.id);
}

void Forest::relabel_from_root(NodeId root) {
  scratch_.clear();
  scratch_.push_back(root);
  TreeId label = root;
  std::size_t head = 0;
  while (head < scratch_.size()) {
    const Node& n = arena_[scratch_[head++]];
    label = std::min(label, n.id);
    for (NodeId c : n.children) scratch_.push_back(c);
  }
  for (NodeId v : scratch_) arena_[v].tree = label;
}

void Forest::assign_label(NodeId root, TreeId label) {
  scratch_.clear();
  scratch_.push_back(root);
  std::size_t head = 0;
  while (head < scratch_.size()) {
    Node& n = arena_[scratch_[head++]];
    n.tree = label;
    for (NodeId c : n.children) scratch_.push_back(c);
  }
}

void Forest::detach_edge(NodeId parent, NodeId child) {
  Node& p = mutable_node(parent);
  Node& c = mutable_node(child);
  if (c.parent != parent)
    throw std::invalid_argument("forest: no such edge");
  unlink(p, c);
  ++tree_count_;
  relabel_from_root(child);
  // The smallest id of the old component may have ended up on the child
  // side; if so the parent side needs a fresh canonical label too.
  const NodeId parent_root = root_of(parent);
  if (arena_[child].tree == arena_[parent].tree) relabel_from_root(parent_root);
}

NodeId Forest::root_of(NodeId n) const {
  const Node* cur = &node(n);
  while (cur->parent != kInvalidNode) cur = &arena_[cur->parent];
  return cur->id;
}

void Forest::reroot(NodeId n) {
  mutable_node(n);
  // Collect the n -> old-root chain, then flip each link.
  std::vector<NodeId> chain;
  for (NodeId v = n; v != kInvalidNode; v = arena_[v].parent)
    chain.push_back(v);
  if (chain.size() == 1) return;  // already the root
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    Node& lower = arena_[chain[i]];
    Node& upper = arena_[chain[i + 1]];
    auto it = std::find(upper.children.begin(), upper.children.end(), lower.id);
    upper.children.erase(it);
    lower.children.push_back(upper.id);
    upper.parent = lower.id;
  }
  arena_[n].parent = kInvalidNode;
}

void Forest::merge(NodeId child_root, NodeId new_parent) {
  Node& c = mutable_node(child_root);
  Node& p = mutable_node(new_parent);
  if (!c.is_root())
    throw std::invalid_argument("forest: merge child must be a root");
  if (c.tree == p.tree)
    throw std::invalid_argument("forest: merge within one tree would create a cycle");
  const TreeId merged = std::min(c.tree, p.tree);
  const bool absorbed_has_min = c.tree == merged;
  c.parent = new_parent;
  p.children.push_back(child_root);
  --tree_count_;
  if (journal_) journal_->edges_added.emplace_back(new_parent, child_root);
  if (absorbed_has_min) {
    // The absorbed side holds the smaller id: stamp it on the whole tree.
    assign_label(root_of(new_parent), merged);
  } else {
    assign_label(child_root, merged);
  }
}

PruneReport Forest::prune_colliding_edges(const EdgePredicate& collides) {
  PruneReport report;
  std::vector<std::pair<NodeId, NodeId>> doomed;
  for (const Node& n : arena_) {
    if (n.parent == kInvalidNode) continue;
    if (collides(arena_[n.parent].config, n.config))
      doomed.emplace_back(n.parent, n.id);
  }
  if (doomed.empty()) return report;

  for (const auto& [p, c] : doomed) unlink(arena_[p], arena_[c]);

  // Every removed edge splits one component in two.
  report.edges_removed = doomed.size();
  report.trees_created = doomed.size();
  tree_count_ += doomed.size();

  // Relabel every component touched by a cut, deduplicated by final root.
  std::vector<NodeId> roots;
  for (const auto& [p, c] : doomed) {
    roots.push_back(c);
    roots.push_back(root_of(p));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (NodeId r : roots) relabel_from_root(r);
  return report;
}

void Forest::refresh_blocked(const NodePredicate& blocked) {
  for (Node& n : arena_) n.blocked = blocked(n.config);
}

TreeId Forest::tree_of(NodeId n) const { return node(n).tree; }

std::vector<NodeId> Forest::path_between(NodeId a, NodeId b) const {
  if (node(a).tree != node(b).tree)
    throw std::invalid_argument("forest: nodes are in different trees");
  // Ancestor chain of a, then climb from b until it is hit: that is the LCA.
  std::vector<NodeId> up_a;
  for (NodeId v = a; v != kInvalidNode; v = arena_[v].parent) up_a.push_back(v);
  std::vector<char> on_a(arena_.size(), 0);
  for (NodeId v : up_a) on_a[v] = 1;

  std::vector<NodeId> up_b;
  NodeId lca = kInvalidNode;
  for (NodeId v = b; v != kInvalidNode; v = arena_[v].parent) {
    if (on_a[v]) {
      lca = v;
      break;
    }
    up_b.push_back(v);
  }

  std::vector<NodeId> path;
  for (NodeId v : up_a) {
    path.push_back(v);
    if (v == lca) break;
  }
  for (auto it = up_b.rbegin(); it != up_b.rend(); ++it) path.push_back(*it);
  return path;
}

Forest Forest::subforest(const std::vector<TreeId>& keep,
                         std::vector<NodeId>& id_map) const {
  Forest out(cell_);
  out.set_journal(journal_);
  id_map.assign(arena_.size(), kInvalidNode);

  auto kept = [&](TreeId t) {
    return std::find(keep.begin(), keep.end(), t) != keep.end();
  };

  // Copy each kept component top-down from its root so parents exist before
  // their children; iterating roots in id order keeps new ids deterministic.
  for (const Node& n : arena_) {
    if (!n.is_root() || !kept(n.tree)) continue;
    std::vector<NodeId> stack{n.id};
    while (!stack.empty()) {
      const NodeId old_id = stack.back();
      stack.pop_back();
      const Node& src = arena_[old_id];
      NodeId new_id;
      if (src.is_root()) {
        new_id = out.add_root(src.config);
      } else {
        new_id = out.add_child(id_map[src.parent], src.config);
      }
      out.arena_[new_id].blocked = src.blocked;
      id_map[old_id] = new_id;
      for (auto it = src.children.rbegin(); it != src.children.rend(); ++it)
        stack.push_back(*it);
    }
  }
  return out;
}

}  // namespace mrrt
