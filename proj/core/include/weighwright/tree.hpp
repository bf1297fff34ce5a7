#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "weighwright/coins.hpp"
#include "weighwright/hypothesis.hpp"
#include "weighwright/weighing.hpp"

namespace weighwright {

class Leaf {
 public:
  enum class Kind { Classified, Uniform };

  static Leaf classified(FakeSet s) { return Leaf(Kind::Classified, s); }
  static Leaf uniform() { return Leaf(Kind::Uniform, FakeSet{}); }

  Kind kind() const { return kind_; }
  bool is_uniform() const { return kind_ == Kind::Uniform; }
  // Meaningful only for Classified leaves.
  FakeSet set() const { return set_; }
  bool claims(const HypothesisClass& c) const;
  std::string to_string() const;

  friend bool operator==(const Leaf&, const Leaf&) = default;

 private:
  Leaf(Kind k, FakeSet s) : kind_(k), set_(s) {}
  Kind kind_;
  FakeSet set_;
};

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct InternalNode {
  Weighing weighing;
  std::array<NodeId, 3> children{kNoNode, kNoNode, kNoNode};  // by outcome digit
};

struct LeafNode {
  Leaf leaf;
};

using Node = std::variant<InternalNode, LeafNode>;

// Adaptive strategy over coins 1..universe stored as a node arena.
class DecisionTree {
 public:
  // Throws MalformedTree on dangling ids, cycles or coins outside the universe.
  DecisionTree(int universe, std::vector<Node> nodes, NodeId root);

  static DecisionTree single_leaf(int universe, Leaf leaf);

  int universe() const { return universe_; }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const Node> nodes() const { return nodes_; }
  bool is_leaf(NodeId id) const { return std::holds_alternative<LeafNode>(node(id)); }
  const InternalNode& internal(NodeId id) const { return std::get<InternalNode>(node(id)); }
  const Leaf& leaf(NodeId id) const { return std::get<LeafNode>(node(id)).leaf; }

  // kNoNode when the child or any node on the way is absent.
  NodeId child(NodeId id, Outcome o) const;
  NodeId find(const Path& p) const;

  // Largest number of counted (non-no-op) weighings on a root-to-leaf path.
  int depth() const;
  // Visits every reachable node with its path; parents before children.
  void visit(const std::function<void(NodeId, const Path&, int counted_depth)>& fn) const;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  int universe_;
  std::vector<Node> nodes_;
  NodeId root_;
};

// Incremental construction; subtrees of other trees can be grafted in.
class TreeBuilder {
 public:
  NodeId add_leaf(Leaf leaf);
  NodeId add_internal(Weighing w, std::array<NodeId, 3> children);
  // Reserves an internal node whose children are filled in later.
  NodeId add_internal(Weighing w);
  void set_child(NodeId parent, Outcome o, NodeId child);
  // Copies the subtree of `from` rooted at `root`, renaming coins through
  // `relabel` (index = old id, value = new id) when given.
  NodeId graft(const DecisionTree& from, NodeId root, std::span<const CoinId> relabel = {});
  DecisionTree build(int universe, NodeId root) &&;

 private:
  std::vector<Node> nodes_;
};

struct RunResult {
  Leaf leaf;
  Path path;
  int weighings_used = 0;
};

// Throws MalformedTree if the walk reaches a missing child.
RunResult run_strategy(const DecisionTree& t, FakeSet s);

// Relabels coins of a whole tree; relabel[i] is the new id of coin i.
DecisionTree relabel_tree(const DecisionTree& t, int new_universe, std::span<const CoinId> relabel);

}  // namespace weighwright
