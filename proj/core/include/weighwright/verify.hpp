#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weighwright/hypothesis.hpp"
#include "weighwright/tree.hpp"

namespace weighwright {

enum class DefectKind {
  Misclassified,  // a hypothesis reaches a leaf that does not claim its class
  MissingChild,   // a hypothesis walks into an absent branch
  DepthExceeded,  // more counted weighings than the budget
  UniformLate,    // the uniform class is isolated after the deadline
  GammaTooLarge,  // too many classes left at the checkpoint depth
};

const char* to_string(DefectKind k);

struct TreeDefect {
  Path prefix;
  DefectKind kind;
  std::string detail;
};

struct VerifyOptions {
  std::optional<int> depth_budget;
  // Counted weighings after which the all-zero path must have narrowed to
  // {empty, full}.
  std::optional<int> uniform_deadline;
  // Nodes at this counted depth may hold at most gamma_limit classes.
  std::optional<int> gamma_depth;
  int gamma_limit = 3;

  // Budget 7, uniform by 6, at most 3 classes after 6: the 11-coin contract.
  static VerifyOptions eleven_coin();
};

struct VerificationReport {
  std::size_t total_cases = 0;  // fake sets simulated (members, not classes)
  std::size_t correct = 0;
  int max_depth = 0;
  // Counted weighings on the all-zero path until only {empty, full} remain.
  std::optional<int> uniform_resolved_by;
  int max_gamma = 0;  // largest class count at gamma_depth
  std::vector<TreeDefect> defects;

  bool ok() const { return defects.empty() && correct == total_cases; }
  std::string summary() const;  // "2048/2048 correct, depth 7"
};

VerificationReport verify_tree(const DecisionTree& t, const HypothesisSet& hypotheses, const VerifyOptions& options);
// All 2^n fake sets of the tree's universe under `semantics`.
VerificationReport verify_tree(const DecisionTree& t, Semantics semantics, const VerifyOptions& options = {});

}  // namespace weighwright
