#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "weighwright/coins.hpp"
#include "weighwright/weighing.hpp"

namespace weighwright {

enum class Semantics {
  Exact,        // reference coins available; all 2^n fake sets distinct
  SortClasses,  // no references; the empty and full sets form one uniform class
};

const char* to_string(Semantics s);  // "exact" / "sort"
std::optional<Semantics> parse_semantics(std::string_view s);

// One indistinguishable class: a single fake set, or the merged pair
// {empty, full} of the sorting setting.
struct HypothesisClass {
  FakeSet primary;
  FakeSet twin;  // equals primary for singleton classes

  static HypothesisClass single(FakeSet s) { return {s, s}; }
  static HypothesisClass uniform(int n) { return {FakeSet{}, FakeSet::full(n)}; }

  bool merged() const { return primary != twin; }
  bool contains(FakeSet s) const { return s == primary || s == twin; }
  friend bool operator==(const HypothesisClass&, const HypothesisClass&) = default;
  friend auto operator<=>(const HypothesisClass& a, const HypothesisClass& b) {
    if (auto c = a.primary <=> b.primary; c != 0) return c;
    return a.twin <=> b.twin;
  }
};

// Classes still consistent with the weighings seen so far. A merged class
// survives a refinement when any of its members is consistent.
class HypothesisSet {
 public:
  HypothesisSet(int universe, Semantics semantics, std::vector<HypothesisClass> classes);

  static HypothesisSet full(int universe, Semantics semantics);

  int universe() const { return universe_; }
  Semantics semantics() const { return semantics_; }
  std::span<const HypothesisClass> classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  std::size_t member_count() const;
  bool contains(FakeSet s) const;
  const HypothesisClass* find(FakeSet s) const;

  HypothesisSet refine(const Weighing& w, Outcome o) const;

 private:
  int universe_;
  Semantics semantics_;
  std::vector<HypothesisClass> classes_;  // sorted, duplicate-free
};

}  // namespace weighwright
