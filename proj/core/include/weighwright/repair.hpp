#pragma once

#include <vector>

#include "weighwright/search.hpp"
#include "weighwright/tree.hpp"
#include "weighwright/verify.hpp"

namespace weighwright {

struct RepairOptions {
  int depth_budget = 7;
  std::optional<int> uniform_deadline;
  std::optional<int> gamma_depth;
  int gamma_limit = 3;
  SearchOptions search;
};

struct RepairResult {
  DecisionTree tree;
  std::vector<Path> replaced;  // prefixes of the regenerated subtrees
};

// Regenerates each minimal defective subtree by search over the hypotheses
// consistent at its root. Throws IrreparableNode when a node admits no
// subtree within the remaining budget.
RepairResult repair_tree(const DecisionTree& t, const HypothesisSet& hypotheses, const VerificationReport& report,
                         const RepairOptions& options);
RepairResult repair_tree(const DecisionTree& t, Semantics semantics, const VerificationReport& report,
                         const RepairOptions& options);

}  // namespace weighwright
