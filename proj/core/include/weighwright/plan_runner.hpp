#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weighwright/composition.hpp"

namespace weighwright {

// A weighing over global coin ids.
struct PlacedWeighing {
  std::vector<CoinId> left;
  std::vector<CoinId> right;
  int left_refs = 0;
  int right_refs = 0;
  std::size_t unit = 0;
  bool comparison = false;  // settles the absolute class of uniform blocks
  std::string describe() const;  // "put coins {1,2,3} on the left pan, {4,5,6} on the right"
  friend bool operator==(const PlacedWeighing&, const PlacedWeighing&) = default;
};

struct PlanResult {
  bool uniform = false;
  std::vector<CoinId> fakes;
  std::string describe() const;  // "fake coins {1}" or "all coins uniform"
  friend bool operator==(const PlanResult&, const PlanResult&) = default;
};

// Executes a composite plan one outcome at a time: blocks run in order,
// adaptively inside each block.
class PlanRunner {
 public:
  struct Options {
    // Check each outcome against the hypotheses still open in the current block.
    bool track_consistency = true;
  };

  struct Step {
    PlacedWeighing weighing;
    Outcome outcome;
  };

  explicit PlanRunner(std::shared_ptr<const CompositePlan> plan);
  PlanRunner(std::shared_ptr<const CompositePlan> plan, Options options);

  const CompositePlan& plan() const { return *plan_; }
  bool finished() const { return finished_; }
  // Precondition: !finished().
  const PlacedWeighing& next() const;
  // false: the outcome contradicts every open hypothesis; nothing changes.
  bool submit(Outcome o);
  int weighings_used() const { return static_cast<int>(history_.size()); }
  const std::vector<Step>& history() const { return history_; }
  // Precondition: finished().
  const PlanResult& result() const;

 private:
  struct Comparison {
    enum class Kind { GroupVsNormal, UnitVsGroup } kind;
    std::vector<std::size_t> group;  // units settled by the outcome
  };

  void enter_unit();
  void settle_leaf(const Leaf& leaf);
  void after_unit();
  void refresh_next();
  void mark_unit(std::size_t unit, bool fake_class, FakeSet local_fakes);
  void mark_units(const std::vector<std::size_t>& units, bool fake);
  CoinId rep(std::size_t unit) const { return plan_->units[unit].coins.front(); }

  std::shared_ptr<const CompositePlan> plan_;
  Options options_;
  std::size_t unit_ = 0;
  NodeId node_ = kNoNode;
  std::optional<HypothesisSet> open_;
  std::vector<signed char> state_;  // per global coin: -1 unknown, 0 normal, 1 fake
  std::optional<CoinId> known_normal_;
  std::vector<std::size_t> pending_;  // uniform units of unknown absolute class
  std::optional<Comparison> comparison_;
  PlacedWeighing next_;
  bool finished_ = false;
  PlanResult result_;
  std::vector<Step> history_;
};

// Outcome of a placed weighing for a global fake set (refs are normal).
Outcome weigh_placed(const std::vector<char>& fake, const PlacedWeighing& w);

// Runs the plan against a known fake set without consistency tracking.
struct Simulation {
  PlanResult result;
  int weighings = 0;
};
Simulation simulate_plan(const std::shared_ptr<const CompositePlan>& plan, const std::vector<char>& fake);

}  // namespace weighwright
