#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weighwright/hypothesis.hpp"
#include "weighwright/search.hpp"
#include "weighwright/tree.hpp"

namespace weighwright {

// How the classes left at a splice node are told apart.
struct FinisherCase {
  enum class Kind {
    GammaOne,            // one class: only the new coins remain
    GammaTwo,            // {X, Y}: x in exactly one of them
    DeltaPlain,          // {x, y, none}
    DeltaProduct,        // {x, y, both} from the intersections with Z
    DeltaDoubleProduct,  // {x, z, both} when X is inside Y
    DeltaTail,           // {z and y, y, none} for a chain X < Y < Z
  };
  Kind kind = Kind::GammaOne;
  std::vector<CoinId> designated;  // coins of A whose weights identify the class
  bool needs_reference = false;    // finisher weighs against a normal coin
  bool external_reference = false; // that coin has to come from outside A
  DecisionTree finisher = DecisionTree::single_leaf(1, Leaf::uniform());  // over designated ++ new coins
};

const char* to_string(FinisherCase::Kind k);

// Chooses the case and designated coins for the classes left at a node,
// following the subset analysis: least ids, label orders tried in turn.
// Classes must be distinct singletons; at most 3 of them.
FinisherCase::Kind classify_gamma(const std::vector<FakeSet>& gamma, std::vector<CoinId>& designated);

struct SpliceOptions {
  Semantics semantics = Semantics::Exact;
  // Counted depth by which the all-zero path must be down to the uniform
  // class in the result (sorting setting).
  std::optional<int> uniform_deadline;
  SearchOptions search;
};

struct SpliceRecord {
  Path prefix;
  int depth = 0;  // counted weighings before the finisher
  FinisherCase finisher;
};

struct SpliceResult {
  DecisionTree tree;
  std::vector<SpliceRecord> splices;
  bool needs_external_reference = false;
};

// Runs f for k - 1 weighings and appends a finisher for the classes left
// there together with the three new coins. Throws PreconditionViolated when a
// node holds more than 3 classes, FinisherInfeasible when no finisher fits.
SpliceResult extend_by_three(const DecisionTree& f, std::array<CoinId, 3> b, const SpliceOptions& options = {});

// Adds coin n+1 with one extra weighing at every leaf.
DecisionTree extend_by_one(const DecisionTree& t, Semantics semantics);

// pairs[i] = (representative, partner); exactly one coin of each pair is fake.
DecisionTree paired_coin_tree(const std::vector<std::pair<CoinId, CoinId>>& pairs);
// The 2^11 orientations as hypotheses over the pair coins.
HypothesisSet pair_orientations(const std::vector<std::pair<CoinId, CoinId>>& pairs);

// Cached building blocks, built on first use.
std::shared_ptr<const DecisionTree> eleven_coin_tree(Semantics semantics, const std::string& name = "alg1");
std::shared_ptr<const DecisionTree> base_tree(int n, Semantics semantics);
// Repaired 11-coin block spliced with coins 12..14.
std::shared_ptr<const SpliceResult> spliced_tree(Semantics semantics);

struct PlanUnit {
  enum class Kind { Block, Spliced, Remainder };
  Kind kind = Kind::Block;
  std::vector<CoinId> coins;  // local coin i is coins[i - 1]
  std::string strategy;
  std::shared_ptr<const DecisionTree> tree;
  int depth = 0;
  std::optional<int> uniform_by;  // counted depth of the uniform leaf
  int cost = 0;                   // worst case including a comparison weighing
  bool needs_external_reference = false;
};

struct SpliceInfo {
  std::size_t block = 0;
  std::vector<CoinId> remainder;
  std::map<std::string, int> cases;  // finisher kind -> splice nodes
  bool needs_external_reference = false;
};

struct CompositePlan {
  int n = 0;
  Semantics semantics = Semantics::Exact;
  std::vector<std::vector<CoinId>> blocks;
  std::vector<CoinId> remainder;
  std::optional<SpliceInfo> splice;
  std::vector<PlanUnit> units;
  int total_weighings = 0;

  int bound() const;  // ceil(7n/11)
};

const char* to_string(PlanUnit::Kind k);

CompositePlan plan(int n, Semantics semantics);
// Single-unit plan around an arbitrary strategy.
CompositePlan plan_from_tree(std::shared_ptr<const DecisionTree> tree, Semantics semantics, std::string name);

std::string plan_to_json(const CompositePlan& p);
std::string plan_summary(const CompositePlan& p);  // human-readable, header line first
std::string plan_header(const CompositePlan& p);   // "16 weighings (bound 16)"

}  // namespace weighwright
