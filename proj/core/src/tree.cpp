#include "weighwright/tree.hpp"

#include <algorithm>

#include "weighwright/errors.hpp"

namespace weighwright {

bool Leaf::claims(const HypothesisClass& c) const {
  if (kind_ == Kind::Uniform) return c.merged();
  return !c.merged() && c.primary == set_;
}

std::string Leaf::to_string() const { return is_uniform() ? std::string("uniform") : set_.to_string(); }

DecisionTree::DecisionTree(int universe, std::vector<Node> nodes, NodeId root)
    : universe_(universe), nodes_(std::move(nodes)), root_(root) {
  if (universe_ < 1 || universe_ > kMaxUniverse) throw MalformedTree("universe out of range");
  const auto n = static_cast<NodeId>(nodes_.size());
  if (root_ < 0 || root_ >= n) throw MalformedTree("root id out of range");
  const CoinSet all = CoinSet::full(universe_);
  // Reachable part must be a tree: each node entered at most once.
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(id)]) throw MalformedTree("node shared or cyclic");
    seen[static_cast<std::size_t>(id)] = 1;
    if (const auto* in = std::get_if<InternalNode>(&nodes_[static_cast<std::size_t>(id)])) {
      if (!in->weighing.coins().subset_of(all)) throw MalformedTree("weighing uses a coin outside the universe");
      for (NodeId c : in->children) {
        if (c == kNoNode) continue;
        if (c < 0 || c >= n) throw MalformedTree("child id out of range");
        stack.push_back(c);
      }
    } else {
      const Leaf& leaf = std::get<LeafNode>(nodes_[static_cast<std::size_t>(id)]).leaf;
      if (!leaf.is_uniform() && !leaf.set().subset_of(all)) throw MalformedTree("leaf outside the universe");
    }
  }
}

DecisionTree DecisionTree::single_leaf(int universe, Leaf leaf) {
  return DecisionTree(universe, {LeafNode{leaf}}, 0);
}

NodeId DecisionTree::child(NodeId id, Outcome o) const {
  if (id == kNoNode || is_leaf(id)) return kNoNode;
  return internal(id).children[static_cast<std::size_t>(digit(o))];
}

NodeId DecisionTree::find(const Path& p) const {
  NodeId id = root_;
  for (Outcome o : p) {
    id = child(id, o);
    if (id == kNoNode) return kNoNode;
  }
  return id;
}

void DecisionTree::visit(const std::function<void(NodeId, const Path&, int)>& fn) const {
  Path path;
  auto rec = [&](auto&& self, NodeId id, int depth) -> void {
    fn(id, path, depth);
    if (is_leaf(id)) return;
    const auto& in = internal(id);
    const int next = depth + (in.weighing.is_noop() ? 0 : 1);
    for (Outcome o : kOutcomes) {
      NodeId c = in.children[static_cast<std::size_t>(digit(o))];
      if (c == kNoNode) continue;
      path.push_back(o);
      self(self, c, next);
      path.pop_back();
    }
  };
  rec(rec, root_, 0);
}

int DecisionTree::depth() const {
  int best = 0;
  visit([&](NodeId id, const Path&, int d) {
    if (is_leaf(id)) best = std::max(best, d);
  });
  return best;
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  if (a.universe_ != b.universe_) return false;
  auto rec = [&](auto&& self, NodeId x, NodeId y) -> bool {
    if ((x == kNoNode) != (y == kNoNode)) return false;
    if (x == kNoNode) return true;
    if (a.is_leaf(x) != b.is_leaf(y)) return false;
    if (a.is_leaf(x)) return a.leaf(x) == b.leaf(y);
    const auto& ix = a.internal(x);
    const auto& iy = b.internal(y);
    if (!(ix.weighing == iy.weighing)) return false;
    for (std::size_t i = 0; i < 3; ++i)
      if (!self(self, ix.children[i], iy.children[i])) return false;
    return true;
  };
  return rec(rec, a.root_, b.root_);
}

NodeId TreeBuilder::add_leaf(Leaf leaf) {
  nodes_.emplace_back(LeafNode{leaf});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TreeBuilder::add_internal(Weighing w, std::array<NodeId, 3> children) {
  nodes_.emplace_back(InternalNode{w, children});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TreeBuilder::add_internal(Weighing w) { return add_internal(w, {kNoNode, kNoNode, kNoNode}); }

void TreeBuilder::set_child(NodeId parent, Outcome o, NodeId child) {
  std::get<InternalNode>(nodes_.at(static_cast<std::size_t>(parent))).children[static_cast<std::size_t>(digit(o))] =
      child;
}

namespace {

CoinSet map_coins(CoinSet s, std::span<const CoinId> relabel) {
  if (relabel.empty()) return s;
  CoinSet out;
  for (CoinId c : s.coins()) {
    if (static_cast<std::size_t>(c) >= relabel.size()) throw MalformedTree("relabel map too short");
    out = out.with(relabel[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace

NodeId TreeBuilder::graft(const DecisionTree& from, NodeId root, std::span<const CoinId> relabel) {
  if (from.is_leaf(root)) {
    const Leaf& l = from.leaf(root);
    return add_leaf(l.is_uniform() ? l : Leaf::classified(map_coins(l.set(), relabel)));
  }
  const auto& in = from.internal(root);
  const Weighing w(Pan{map_coins(in.weighing.left().coins, relabel), in.weighing.left().refs},
                   Pan{map_coins(in.weighing.right().coins, relabel), in.weighing.right().refs});
  std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
  for (std::size_t i = 0; i < 3; ++i)
    if (in.children[i] != kNoNode) kids[i] = graft(from, in.children[i], relabel);
  return add_internal(w, kids);
}

DecisionTree TreeBuilder::build(int universe, NodeId root) && {
  return DecisionTree(universe, std::move(nodes_), root);
}

RunResult run_strategy(const DecisionTree& t, FakeSet s) {
  RunResult r{Leaf::uniform(), {}, 0};
  NodeId id = t.root();
  while (!t.is_leaf(id)) {
    const auto& in = t.internal(id);
    const Outcome o = weigh(s, in.weighing);
    r.path.push_back(o);
    if (!in.weighing.is_noop()) ++r.weighings_used;
    id = in.children[static_cast<std::size_t>(digit(o))];
    if (id == kNoNode) throw MalformedTree("no branch for outcome history " + path_to_string(r.path));
  }
  r.leaf = t.leaf(id);
  return r;
}

DecisionTree relabel_tree(const DecisionTree& t, int new_universe, std::span<const CoinId> relabel) {
  TreeBuilder b;
  NodeId root = b.graft(t, t.root(), relabel);
  return std::move(b).build(new_universe, root);
}

}  // namespace weighwright
