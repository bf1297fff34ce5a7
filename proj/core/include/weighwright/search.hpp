#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>

#include "weighwright/hypothesis.hpp"
#include "weighwright/tree.hpp"

namespace weighwright {

inline constexpr int kUnlimitedRefs = -1;

struct SearchProblem {
  HypothesisSet hypotheses;
  int depth_budget = 0;
  // Reference coins per weighing: 0 (sorting setting), a count, or kUnlimitedRefs.
  int refs = 0;
  // When set, within this many counted weighings the branch holding the empty
  // set must be down to the classes of the empty and the full set.
  std::optional<int> uniform_deadline;
  int max_pan_size = 0;  // 0: unrestricted

  static SearchProblem exact(int n, int depth);  // all 2^n sets, unlimited refs
  static SearchProblem sorting(int n, int depth, std::optional<int> uniform_deadline = std::nullopt);
};

enum class CandidateOrder {
  BalancedFirst,  // smallest worst branch first, then lexicographic
  Lexicographic,  // lexicographically least weighing first
};

struct SearchOptions {
  std::uint64_t node_limit = 0;  // 0: none
  std::chrono::milliseconds time_limit{0};  // 0: none
  bool memoize = true;
  // Treat coins with identical membership across the remaining classes as
  // interchangeable and generate one representative weighing per pattern.
  bool symmetry_filter = true;
  CandidateOrder order = CandidateOrder::BalancedFirst;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::chrono::nanoseconds elapsed{0};
};

// Depth-bounded exhaustive minimax search. A Solver keeps its memo table
// between calls; solve() is safe to call from several threads.
class Solver {
 public:
  explicit Solver(SearchOptions options = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  // nullopt is a proof that no tree exists under the generation policy.
  // Throws BudgetExceeded when a node or time cap is hit first.
  std::optional<DecisionTree> solve(const SearchProblem& problem);

  SearchStats stats() const;
  const SearchOptions& options() const;
  void clear_memo();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<DecisionTree> solve(const SearchProblem& problem, const SearchOptions& options = {});

// Least depth <= d_max admitting a strategy; nullopt when none does.
std::optional<int> g_exact(int n, int d_max, const SearchOptions& options = {});
std::optional<int> gbar_exact(int n, int d_max, const SearchOptions& options = {});

// Strategy for n <= 11 coins with at most ceil(7n/11) weighings; in the
// sorting setting the uniform class is isolated one weighing early (n != 3).
DecisionTree synthesize_base(int n, Semantics semantics);

}  // namespace weighwright
