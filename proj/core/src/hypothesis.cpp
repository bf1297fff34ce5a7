#include "weighwright/hypothesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace weighwright {

const char* to_string(Semantics s) { return s == Semantics::Exact ? "exact" : "sort"; }

std::optional<Semantics> parse_semantics(std::string_view s) {
  if (s == "exact") return Semantics::Exact;
  if (s == "sort" || s == "sorting") return Semantics::SortClasses;
  return std::nullopt;
}

HypothesisSet::HypothesisSet(int universe, Semantics semantics, std::vector<HypothesisClass> classes)
    : universe_(universe), semantics_(semantics), classes_(std::move(classes)) {
  if (universe_ < 1 || universe_ > kMaxUniverse) throw std::invalid_argument("universe out of range");
  for (const auto& c : classes_)
    if (!c.primary.fits(universe_) || !c.twin.fits(universe_))
      throw std::invalid_argument("hypothesis outside the coin universe");
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
}

HypothesisSet HypothesisSet::full(int universe, Semantics semantics) {
  if (universe < 1 || universe > 30) throw std::invalid_argument("full hypothesis set needs 1 <= n <= 30");
  const std::uint64_t count = std::uint64_t{1} << universe;
  std::vector<HypothesisClass> classes;
  classes.reserve(count);
  if (semantics == Semantics::SortClasses) {
    classes.push_back(HypothesisClass::uniform(universe));
    for (std::uint64_t x = 1; x + 1 < count; ++x) classes.push_back(HypothesisClass::single(FakeSet(x)));
  } else {
    for (std::uint64_t x = 0; x < count; ++x) classes.push_back(HypothesisClass::single(FakeSet(x)));
  }
  return HypothesisSet(universe, semantics, std::move(classes));
}

std::size_t HypothesisSet::member_count() const {
  std::size_t n = 0;
  for (const auto& c : classes_) n += c.merged() ? 2 : 1;
  return n;
}

const HypothesisClass* HypothesisSet::find(FakeSet s) const {
  for (const auto& c : classes_)
    if (c.contains(s)) return &c;
  return nullptr;
}

bool HypothesisSet::contains(FakeSet s) const { return find(s) != nullptr; }

HypothesisSet HypothesisSet::refine(const Weighing& w, Outcome o) const {
  std::vector<HypothesisClass> kept;
  for (const auto& c : classes_)
    if (weigh(c.primary, w) == o || weigh(c.twin, w) == o) kept.push_back(c);
  HypothesisSet out(*this);
  out.classes_ = std::move(kept);
  return out;
}

}  // namespace weighwright
