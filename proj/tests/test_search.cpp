#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weighwright/errors.hpp"
#include "weighwright/search.hpp"
#include "weighwright/verify.hpp"

using namespace weighwright;

namespace {

bool sound(const DecisionTree& t, const SearchProblem& p) {
  const auto r = verify_tree(t, p.hypotheses, {p.depth_budget, p.uniform_deadline, std::nullopt, 3});
  return r.ok() && t.depth() <= p.depth_budget;
}

}  // namespace

TEST_CASE("one coin against a reference") {
  const auto t = solve(SearchProblem::exact(1, 1));
  REQUIRE(t.has_value());
  CHECK(t->depth() == 1);
  const auto& w = t->internal(t->root()).weighing;
  CHECK(w.coins() == FakeSet{1});
  CHECK(w.refs() == 1);
  CHECK(oracle::exhaustive(*t, Semantics::Exact).ok());
}

TEST_CASE("three coins need three weighings with references") {
  CHECK_FALSE(solve(SearchProblem::exact(3, 2)).has_value());
  const auto t = solve(SearchProblem::exact(3, 3));
  REQUIRE(t.has_value());
  CHECK(oracle::exhaustive(*t, Semantics::Exact).ok());
}

TEST_CASE("exact small values") {
  CHECK(g_exact(1, 4) == 1);
  CHECK(g_exact(2, 4) == 2);
  CHECK(g_exact(3, 4) == 3);
  CHECK(g_exact(4, 4) == 3);
  CHECK(gbar_exact(1, 4) == 0);
  CHECK(gbar_exact(2, 4) == 1);
  CHECK(gbar_exact(4, 4) == 3);
  CHECK(gbar_exact(6, 5) == 4);
}

TEST_CASE("sorting three coins takes two weighings but cannot isolate uniformity early") {
  CHECK(gbar_exact(3, 4) == 2);
  const auto t = solve(SearchProblem::sorting(3, 2));
  REQUIRE(t.has_value());
  CHECK(oracle::exhaustive(*t, Semantics::SortClasses).ok());
  CHECK_FALSE(solve(SearchProblem::sorting(3, 2, 1)).has_value());
  CHECK_FALSE(solve(SearchProblem::sorting(3, 3, 1)).has_value());
}

TEST_CASE("six coins sort in four weighings with uniformity after three") {
  const auto t = solve(SearchProblem::sorting(6, 4, 3));
  REQUIRE(t.has_value());
  CHECK(oracle::exhaustive(*t, Semantics::SortClasses).ok());
  CHECK(oracle::uniform_isolated_after(*t) <= 3);
}

TEST_CASE("pair-product finisher exists in three weighings") {
  // x = 1, y = 2, new coins 3..5; exactly one or both of x, y are fake.
  std::vector<HypothesisClass> classes;
  for (std::uint64_t head : {1ULL, 2ULL, 3ULL})
    for (std::uint64_t tail = 0; tail < 8; ++tail) classes.push_back(HypothesisClass::single(FakeSet(head | (tail << 2))));
  SearchProblem p{HypothesisSet(5, Semantics::Exact, classes), 3, kUnlimitedRefs, std::nullopt, 0};
  CHECK(p.hypotheses.size() == 24);
  const auto t = solve(p);
  REQUIRE(t.has_value());
  CHECK(sound(*t, p));
}

TEST_CASE("budget limits raise BudgetExceeded") {
  SearchOptions o;
  o.node_limit = 1;
  o.memoize = false;
  CHECK_THROWS_AS(solve(SearchProblem::exact(5, 4), o), BudgetExceeded);
}

TEST_CASE("property: solve output is sound and feasibility is monotone in depth") {
  for (const Semantics sem : {Semantics::Exact, Semantics::SortClasses}) {
    for (int n = 1; n <= 5; ++n) {
      bool seen_feasible = false;
      for (int d = 0; d <= 4; ++d) {
        const auto p = sem == Semantics::Exact ? SearchProblem::exact(n, d) : SearchProblem::sorting(n, d);
        const auto t = solve(p);
        if (seen_feasible) CHECK(t.has_value());
        if (t) {
          seen_feasible = true;
          CHECK(sound(*t, p));
          CHECK(oracle::exhaustive(*t, sem).ok());
        }
      }
      CHECK(seen_feasible);
    }
  }
}

TEST_CASE("property: memo, symmetry filter and candidate order do not change feasibility") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 3);
    std::vector<HypothesisClass> classes;
    for (std::uint64_t s = 0; s < (1ULL << n); ++s)
      if (rng() % 3) classes.push_back(HypothesisClass::single(FakeSet(s)));
    if (classes.empty()) continue;
    const int refs = static_cast<int>(rng() % 2) ? kUnlimitedRefs : 0;
    const SearchProblem p{HypothesisSet(n, Semantics::Exact, classes), d, refs, std::nullopt, 0};

    SearchOptions plain;
    plain.memoize = false;
    plain.symmetry_filter = false;
    plain.order = CandidateOrder::Lexicographic;
    const auto base = solve(p, plain);
    SearchOptions fast;
    const auto quick = solve(p, fast);
    Solver shared;
    const auto first = shared.solve(p);
    const auto again = shared.solve(p);
    CHECK(base.has_value() == quick.has_value());
    CHECK(first.has_value() == base.has_value());
    REQUIRE(again.has_value() == first.has_value());
    if (first) CHECK(*again == *first);
    for (const auto* t : {&base, &quick, &first})
      if (*t) CHECK(sound(**t, p));
  }
}

TEST_CASE("base strategies for n up to 11") {
  for (const Semantics sem : {Semantics::Exact, Semantics::SortClasses}) {
    for (int n = 1; n <= 11; ++n) {
      CAPTURE(n);
      CAPTURE(to_string(sem));
      const DecisionTree t = synthesize_base(n, sem);
      const auto o = oracle::exhaustive(t, sem);
      CHECK(o.ok());
      const int bound = n == 3 && sem == Semantics::Exact ? 3 : static_cast<int>(oracle::upper(n));
      CHECK(t.depth() <= bound);
      if (sem == Semantics::SortClasses && n != 3) CHECK(oracle::uniform_isolated_after(t) <= bound - 1);
    }
  }
  const DecisionTree six = synthesize_base(6, Semantics::SortClasses);
  CHECK(six.depth() == 4);
  CHECK(oracle::uniform_isolated_after(six) <= 3);
  CHECK(synthesize_base(1, Semantics::Exact).depth() == 1);
  CHECK(synthesize_base(11, Semantics::SortClasses).depth() == 7);
}
