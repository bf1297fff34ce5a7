#include "weighwright/repair.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "weighwright/errors.hpp"

namespace weighwright {

namespace {

bool is_prefix(const Path& p, const Path& of) {
  return p.size() <= of.size() && std::equal(p.begin(), p.end(), of.begin());
}

// Counted weighings on the way to q, or nullopt if q leaves the tree before
// its last step (a missing child is still a valid slot).
std::optional<int> counted_depth(const DecisionTree& t, const Path& q) {
  NodeId id = t.root();
  int used = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (id == kNoNode || t.is_leaf(id)) return std::nullopt;
    if (!t.internal(id).weighing.is_noop()) ++used;
    id = t.child(id, q[i]);
  }
  return used;
}

struct Walk {
  std::size_t cls;
  Path path;
};

}  // namespace

RepairResult repair_tree(const DecisionTree& t, const HypothesisSet& hypotheses, const VerificationReport& report,
                         const RepairOptions& options) {
  if (report.ok()) return {t, {}};

  const auto classes = hypotheses.classes();
  std::vector<Walk> walks;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    for (FakeSet s : {classes[ci].primary, classes[ci].twin}) {
      Path path;
      NodeId id = t.root();
      while (id != kNoNode && !t.is_leaf(id)) {
        const Outcome o = weigh(s, t.internal(id).weighing);
        path.push_back(o);
        id = t.child(id, o);
      }
      walks.push_back({ci, std::move(path)});
      if (!classes[ci].merged()) break;
    }
  }

  Solver solver(options.search);
  const int refs = hypotheses.semantics() == Semantics::Exact ? kUnlimitedRefs : 0;
  std::map<Path, std::optional<DecisionTree>> attempts;

  auto attempt = [&](const Path& q) -> const std::optional<DecisionTree>& {
    if (auto it = attempts.find(q); it != attempts.end()) return it->second;
    std::optional<DecisionTree> result;
    const auto used = counted_depth(t, q);
    std::vector<HypothesisClass> here;
    std::set<std::size_t> seen;
    for (const auto& w : walks)
      if (is_prefix(q, w.path) && seen.insert(w.cls).second) here.push_back(classes[w.cls]);
    if (used && !here.empty() && *used <= options.depth_budget) {
      SearchProblem p{HypothesisSet(hypotheses.universe(), hypotheses.semantics(), std::move(here)),
                      options.depth_budget - *used, refs, std::nullopt, 0};
      const bool zero_path = std::all_of(q.begin(), q.end(), [](Outcome o) { return o == Outcome::Balance; });
      bool possible = true;
      if (options.uniform_deadline && zero_path) {
        const int u = *options.uniform_deadline - *used;
        if (u < 0) possible = false;
        p.uniform_deadline = u;
      }
      if (possible) result = solver.solve(p);
    }
    return attempts.emplace(q, std::move(result)).first->second;
  };

  std::set<Path> slots;
  for (const auto& d : report.defects) slots.insert(d.prefix);

  std::map<Path, DecisionTree> replacements;
  for (const Path& slot : slots) {
    bool fixed = false;
    for (std::size_t len = slot.size() + 1; len-- > 0;) {
      const Path q(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(len));
      const auto& r = attempt(q);
      if (r) {
        replacements.insert_or_assign(q, *r);
        fixed = true;
        break;
      }
    }
    if (!fixed) throw IrreparableNode(slot);
  }

  // Keep only outermost replacements.
  std::vector<Path> outer;
  for (const auto& [q, tree] : replacements) {
    if (!outer.empty() && is_prefix(outer.back(), q)) continue;
    outer.push_back(q);
  }

  TreeBuilder b;
  Path path;
  auto copy = [&](auto&& self, NodeId id) -> NodeId {
    if (auto it = replacements.find(path); it != replacements.end() &&
                                           std::binary_search(outer.begin(), outer.end(), path)) {
      return b.graft(it->second, it->second.root());
    }
    if (id == kNoNode) return kNoNode;
    if (t.is_leaf(id)) return b.add_leaf(t.leaf(id));
    const auto& in = t.internal(id);
    std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
    for (Outcome o : kOutcomes) {
      path.push_back(o);
      kids[static_cast<std::size_t>(digit(o))] = self(self, in.children[static_cast<std::size_t>(digit(o))]);
      path.pop_back();
    }
    return b.add_internal(in.weighing, kids);
  };
  const NodeId root = copy(copy, t.root());
  if (root == kNoNode) throw IrreparableNode(Path{});
  RepairResult out{std::move(b).build(t.universe(), root), outer};

  VerifyOptions vo;
  vo.depth_budget = options.depth_budget;
  vo.uniform_deadline = options.uniform_deadline;
  vo.gamma_depth = options.gamma_depth;
  vo.gamma_limit = options.gamma_limit;
  const auto after = verify_tree(out.tree, hypotheses, vo);
  if (!after.ok()) throw IrreparableNode(after.defects.empty() ? Path{} : after.defects.front().prefix);
  return out;
}

RepairResult repair_tree(const DecisionTree& t, Semantics semantics, const VerificationReport& report,
                         const RepairOptions& options) {
  return repair_tree(t, HypothesisSet::full(t.universe(), semantics), report, options);
}

}  // namespace weighwright
