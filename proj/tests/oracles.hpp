#pragma once

// Test-side reference implementations. They only use the tree's node arena and
// plain bit arithmetic, never the library's simulators or verifiers.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "weighwright/tree.hpp"

namespace oracle {

using weighwright::DecisionTree;
using weighwright::NodeId;
using weighwright::Outcome;
using weighwright::Semantics;

inline int count_in(std::uint64_t fake, std::uint64_t pan) {
  int k = 0;
  for (int c = 0; c < 64; ++c)
    if (((fake >> c) & 1U) && ((pan >> c) & 1U)) ++k;
  return k;
}

// 0 balance, 1 left lighter, 2 left heavier. References are normal.
inline int weigh(std::uint64_t fake, const weighwright::Weighing& w) {
  const int l = count_in(fake, w.left().coins.bits());
  const int r = count_in(fake, w.right().coins.bits());
  return l == r ? 0 : (l < r ? 1 : 2);
}

struct Walk {
  std::vector<NodeId> nodes;  // visited internal nodes, in order
  std::vector<int> digits;    // outcome per visited internal node
  NodeId leaf = weighwright::kNoNode;
  int counted = 0;            // weighings that were not no-ops
  bool fell_off = false;
};

inline Walk walk(const DecisionTree& t, std::uint64_t fake) {
  Walk out;
  NodeId id = t.root();
  while (true) {
    const auto& node = t.node(id);
    if (std::holds_alternative<weighwright::LeafNode>(node)) {
      out.leaf = id;
      return out;
    }
    const auto& in = std::get<weighwright::InternalNode>(node);
    const int d = weigh(fake, in.weighing);
    out.nodes.push_back(id);
    out.digits.push_back(d);
    if (in.weighing.left().size() > 0) ++out.counted;
    const NodeId next = in.children[static_cast<std::size_t>(d)];
    if (next == weighwright::kNoNode) {
      out.fell_off = true;
      return out;
    }
    id = next;
  }
}

inline std::uint64_t full(int n) { return n >= 64 ? ~0ULL : (1ULL << n) - 1; }

inline bool is_uniform(std::uint64_t fake, int n) { return fake == 0 || fake == full(n); }

inline bool correct(const DecisionTree& t, std::uint64_t fake, Semantics sem, const Walk& w) {
  if (w.fell_off) return false;
  const auto& leaf = t.leaf(w.leaf);
  if (sem == Semantics::SortClasses && is_uniform(fake, t.universe())) return leaf.is_uniform();
  return !leaf.is_uniform() && leaf.set().bits() == fake;
}

struct Check {
  std::uint64_t cases = 0;
  std::uint64_t correct = 0;
  int max_depth = 0;
  bool ok() const { return cases == correct; }
};

// Every subset of 1..n run through the tree.
inline Check exhaustive(const DecisionTree& t, Semantics sem) {
  Check c;
  const int n = t.universe();
  for (std::uint64_t s = 0; s <= full(n); ++s) {
    const Walk w = walk(t, s);
    ++c.cases;
    if (correct(t, s, sem, w)) ++c.correct;
    if (w.counted > c.max_depth) c.max_depth = w.counted;
    if (s == full(n)) break;
  }
  return c;
}

// Key of a class: sort semantics glue the empty and full sets together.
inline std::uint64_t class_key(std::uint64_t s, int n, Semantics sem) {
  return sem == Semantics::SortClasses && s == full(n) ? 0 : s;
}

// Counted depth after which only the uniform sets can be at the node reached
// by the empty set; -1 if that never happens before its leaf.
inline int uniform_isolated_after(const DecisionTree& t) {
  const int n = t.universe();
  const Walk zero = walk(t, 0);
  std::vector<Walk> walks;
  for (std::uint64_t s = 0; s <= full(n); ++s) {
    walks.push_back(walk(t, s));
    if (s == full(n)) break;
  }
  int counted = 0;
  for (std::size_t i = 0; i <= zero.nodes.size(); ++i) {
    bool only_uniform = true;
    for (std::uint64_t s = 0; s < walks.size() && only_uniform; ++s) {
      const Walk& w = walks[s];
      if (w.digits.size() < i) continue;
      bool same = true;
      for (std::size_t j = 0; j < i && same; ++j) same = w.digits[j] == zero.digits[j];
      if (same && !is_uniform(s, n)) only_uniform = false;
    }
    if (only_uniform) return counted;
    if (i < zero.nodes.size() && t.internal(zero.nodes[i]).weighing.left().size() > 0) ++counted;
  }
  return -1;
}

// Largest number of distinct classes sharing a node after `depth` counted
// weighings (or at a leaf reached earlier).
inline std::size_t max_classes_at(const DecisionTree& t, Semantics sem, int depth) {
  const int n = t.universe();
  std::map<std::vector<int>, std::set<std::uint64_t>> groups;
  for (std::uint64_t s = 0; s <= full(n); ++s) {
    const Walk w = walk(t, s);
    std::vector<int> prefix;
    int counted = 0;
    for (std::size_t j = 0; j < w.digits.size() && counted < depth; ++j) {
      prefix.push_back(w.digits[j]);
      if (t.internal(w.nodes[j]).weighing.left().size() > 0) ++counted;
    }
    groups[prefix].insert(class_key(s, n, sem));
    if (s == full(n)) break;
  }
  std::size_t worst = 0;
  for (const auto& [k, v] : groups) worst = std::max(worst, v.size());
  return worst;
}

// ceil(log3(x)) for x >= 1 by repeated multiplication on a decimal bignum.
class BigNat {
 public:
  explicit BigNat(std::uint32_t v = 0) {
    while (v) {
      limbs_.push_back(v % kBase);
      v /= kBase;
    }
  }
  void mul(std::uint32_t k) {
    std::uint64_t carry = 0;
    for (auto& l : limbs_) {
      const std::uint64_t x = std::uint64_t{l} * k + carry;
      l = static_cast<std::uint32_t>(x % kBase);
      carry = x / kBase;
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
  }
  void dec() {  // precondition: nonzero
    for (auto& l : limbs_) {
      if (l > 0) {
        --l;
        break;
      }
      l = kBase - 1;
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  friend bool operator>=(const BigNat& a, const BigNat& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() > b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] > b.limbs_[i];
    return true;
  }

 private:
  static constexpr std::uint32_t kBase = 1000000000;
  std::vector<std::uint32_t> limbs_;
};

inline BigNat pow_nat(std::uint32_t base, std::int64_t e) {
  BigNat r(1);
  for (std::int64_t i = 0; i < e; ++i) r.mul(base);
  return r;
}

// Least k with 3^k >= target.
inline std::int64_t least_power_of_three(const BigNat& target) {
  BigNat p(1);
  std::int64_t k = 0;
  while (!(p >= target)) {
    p.mul(3);
    ++k;
  }
  return k;
}

inline std::int64_t lower_g(std::int64_t n) { return least_power_of_three(pow_nat(2, n)); }
inline std::int64_t lower_gbar(std::int64_t n) {
  BigNat t = pow_nat(2, n);
  t.dec();
  return least_power_of_three(t);
}
inline std::int64_t upper(std::int64_t n) { return (7 * n + 10) / 11; }

}  // namespace oracle
