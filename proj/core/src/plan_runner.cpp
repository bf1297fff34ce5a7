#include "weighwright/plan_runner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "weighwright/errors.hpp"

namespace weighwright {

namespace {

std::string coin_list(const std::vector<CoinId>& coins, int refs) {
  std::string s = "{";
  bool first = true;
  for (CoinId c : coins) {
    if (!first) s += ',';
    s += std::to_string(c);
    first = false;
  }
  s += '}';
  if (refs > 0) s += " plus " + std::to_string(refs) + (refs == 1 ? " reference coin" : " reference coins");
  return s;
}

}  // namespace

std::string PlacedWeighing::describe() const {
  return "put coins " + coin_list(left, left_refs) + " on the left pan, " + coin_list(right, right_refs) +
         " on the right";
}

std::string PlanResult::describe() const {
  if (uniform) return "all coins uniform";
  if (fakes.empty()) return "no fake coins";
  return std::string(fakes.size() == 1 ? "fake coin " : "fake coins ") + coin_list(fakes, 0);
}

Outcome weigh_placed(const std::vector<char>& fake, const PlacedWeighing& w) {
  int l = 0, r = 0;
  for (CoinId c : w.left) l += fake.at(static_cast<std::size_t>(c)) ? 1 : 0;
  for (CoinId c : w.right) r += fake.at(static_cast<std::size_t>(c)) ? 1 : 0;
  return l > r ? Outcome::LeftHeavier : l < r ? Outcome::LeftLighter : Outcome::Balance;
}

PlanRunner::PlanRunner(std::shared_ptr<const CompositePlan> plan) : PlanRunner(std::move(plan), Options{}) {}

PlanRunner::PlanRunner(std::shared_ptr<const CompositePlan> plan, Options options)
    : plan_(std::move(plan)), options_(options) {
  if (!plan_ || plan_->units.empty()) throw std::invalid_argument("plan has no units");
  state_.assign(static_cast<std::size_t>(plan_->n) + 1, -1);
  enter_unit();
}

const PlacedWeighing& PlanRunner::next() const {
  if (finished_) throw std::logic_error("plan already finished");
  return next_;
}

const PlanResult& PlanRunner::result() const {
  if (!finished_) throw std::logic_error("plan still running");
  return result_;
}

void PlanRunner::enter_unit() {
  // Skip through leaves reached without weighing (e.g. a one-class block).
  while (unit_ < plan_->units.size()) {
    const PlanUnit& u = plan_->units[unit_];
    node_ = u.tree->root();
    if (options_.track_consistency)
      open_ = HypothesisSet::full(u.tree->universe(), plan_->semantics);
    if (!u.tree->is_leaf(node_)) {
      refresh_next();
      return;
    }
    settle_leaf(u.tree->leaf(node_));
    if (comparison_) {
      refresh_next();
      return;
    }
    ++unit_;
  }
  after_unit();
}

void PlanRunner::mark_unit(std::size_t unit, bool fake_class, FakeSet local_fakes) {
  const auto& coins = plan_->units[unit].coins;
  for (std::size_t i = 0; i < coins.size(); ++i) {
    const bool fake = fake_class || local_fakes.contains(static_cast<CoinId>(i + 1));
    state_[static_cast<std::size_t>(coins[i])] = fake ? 1 : 0;
    if (!fake && !known_normal_) known_normal_ = coins[i];
  }
}

void PlanRunner::mark_units(const std::vector<std::size_t>& units, bool fake) {
  for (std::size_t u : units) mark_unit(u, fake, FakeSet{});
}

void PlanRunner::settle_leaf(const Leaf& leaf) {
  if (!leaf.is_uniform()) {
    mark_unit(unit_, false, leaf.set());
    if (!pending_.empty()) comparison_ = Comparison{Comparison::Kind::GroupVsNormal, pending_};
    return;
  }
  if (known_normal_) {
    comparison_ = Comparison{Comparison::Kind::GroupVsNormal, {unit_}};
  } else if (!pending_.empty()) {
    comparison_ = Comparison{Comparison::Kind::UnitVsGroup, {unit_}};
  } else {
    pending_.push_back(unit_);
  }
}

void PlanRunner::after_unit() {
  if (unit_ < plan_->units.size()) return;
  finished_ = true;
  result_ = {};
  if (!pending_.empty()) {
    // Every block was uniform and they all matched each other.
    result_.uniform = true;
    return;
  }
  for (CoinId c = 1; c <= plan_->n; ++c)
    if (state_[static_cast<std::size_t>(c)] == 1) result_.fakes.push_back(c);
}

void PlanRunner::refresh_next() {
  next_ = PlacedWeighing{};
  next_.unit = unit_;
  if (comparison_) {
    next_.comparison = true;
    if (comparison_->kind == Comparison::Kind::GroupVsNormal) {
      next_.left = {rep(comparison_->group.front())};
      next_.right = {*known_normal_};
    } else {
      next_.left = {rep(comparison_->group.front())};
      next_.right = {rep(pending_.front())};
    }
    return;
  }
  const PlanUnit& u = plan_->units[unit_];
  const Weighing& w = u.tree->internal(node_).weighing;
  for (CoinId c : w.left().coins.coins()) next_.left.push_back(u.coins.at(static_cast<std::size_t>(c - 1)));
  for (CoinId c : w.right().coins.coins()) next_.right.push_back(u.coins.at(static_cast<std::size_t>(c - 1)));
  next_.left_refs = w.left().refs;
  next_.right_refs = w.right().refs;
  if (plan_->semantics == Semantics::SortClasses && (next_.left_refs || next_.right_refs)) {
    // No outside normals in the sorting setting: borrow coins found normal earlier.
    CoinId c = 1;
    for (auto [pan, refs] : {std::pair{&next_.left, &next_.left_refs}, std::pair{&next_.right, &next_.right_refs}}) {
      for (; *refs > 0; --*refs) {
        while (c <= plan_->n && state_[static_cast<std::size_t>(c)] != 0) ++c;
        if (c > plan_->n) throw std::runtime_error("plan needs a known normal coin that is not available yet");
        pan->push_back(c++);
      }
      std::sort(pan->begin(), pan->end());
    }
  }
}

bool PlanRunner::submit(Outcome o) {
  if (finished_) throw std::logic_error("plan already finished");

  if (comparison_) {
    const Comparison c = *comparison_;
    if (c.kind == Comparison::Kind::GroupVsNormal) {
      if (o == Outcome::LeftLighter) return false;
      mark_units(c.group, o == Outcome::LeftHeavier);
      if (c.group == pending_) pending_.clear();
    } else if (o == Outcome::Balance) {
      pending_.push_back(c.group.front());
    } else {
      // The new block and the pending group are of opposite classes.
      const bool unit_heavy = o == Outcome::LeftHeavier;
      mark_units(c.group, unit_heavy);
      mark_units(pending_, !unit_heavy);
      pending_.clear();
    }
    history_.push_back({next_, o});
    comparison_.reset();
    // A group settled by a classified block comes before that block's exit.
    ++unit_;
    enter_unit();
    return true;
  }

  const PlanUnit& u = plan_->units[unit_];
  const Weighing& w = u.tree->internal(node_).weighing;
  if (open_) {
    HypothesisSet refined = open_->refine(w, o);
    if (refined.empty()) return false;
    open_ = std::move(refined);
  }
  const NodeId child = u.tree->child(node_, o);
  if (child == kNoNode) {
    if (options_.track_consistency) throw MalformedTree("strategy has no branch for a consistent outcome");
    return false;
  }
  history_.push_back({next_, o});
  node_ = child;
  if (!u.tree->is_leaf(node_)) {
    refresh_next();
    return true;
  }
  settle_leaf(u.tree->leaf(node_));
  if (comparison_) {
    refresh_next();
    return true;
  }
  ++unit_;
  enter_unit();
  return true;
}

Simulation simulate_plan(const std::shared_ptr<const CompositePlan>& plan, const std::vector<char>& fake) {
  PlanRunner runner(plan, PlanRunner::Options{false});
  while (!runner.finished()) {
    if (!runner.submit(weigh_placed(fake, runner.next())))
      throw MalformedTree("plan rejected the true outcome of " + runner.next().describe());
  }
  return {runner.result(), runner.weighings_used()};
}

}  // namespace weighwright
