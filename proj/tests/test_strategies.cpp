#include <doctest.h>

#include <chrono>
#include <sstream>

#include "oracles.hpp"
#include "weighwright/composition.hpp"
#include "weighwright/errors.hpp"
#include "weighwright/repair.hpp"
#include "weighwright/strategy_table.hpp"
#include "weighwright/verify.hpp"

using namespace weighwright;

namespace {

StrategyTable shipped(const std::string& name, Semantics sem = Semantics::SortClasses) {
  ImportOptions o;
  o.name = name;
  o.semantics = sem;
  auto t = builtin_table(name, o);
  REQUIRE(t.has_value());
  return *t;
}

DecisionTree lenient(const StrategyTable& t) { return table_to_tree(t, BuildMode::Lenient); }

}  // namespace

TEST_CASE("shipped tables start with the printed weighings") {
  const auto a1 = shipped("alg1");
  CHECK(a1.universe == 11);
  CHECK(a1.weighings.at(Path{}).to_string() == "{1,2,3}:{4,5,6}");
  CHECK(a1.outcomes.at(path_from_digits({2, 2, 0, 0, 0})) == Leaf::classified(FakeSet{1}));
  CHECK(shipped("alg2").weighings.at(path_from_digits({0, 0})).to_string() == "{2,7}:{3,8}");
  CHECK(shipped("alg3").weighings.at(path_from_digits({0, 0, 0})).to_string() == "{1,3}:{2,4}");
  CHECK(builtin_table_names() == std::vector<std::string>{"alg1", "alg2", "alg3"});
}

TEST_CASE("shipped data files match the compiled-in tables") {
  for (const std::string name : {"alg1", "alg2", "alg3"}) {
    const auto file = load_table(std::string(WEIGHWRIGHT_TEST_DATA_DIR) + "/" + name + ".json");
    const auto builtin = shipped(name);
    CHECK(file.weighings == builtin.weighings);
    CHECK(file.outcomes == builtin.outcomes);
    CHECK(file.defects.size() == builtin.defects.size());
  }
}

TEST_CASE("importer handles the small cases") {
  const auto t = import_table_text("w() = {1}:{ref}\nf(0) = 0\nf(2) = 1\n", {"one", 1, Semantics::Exact});
  const DecisionTree tree = table_to_tree(t);
  CHECK(tree.depth() == 1);
  CHECK(verify_tree(tree, Semantics::Exact).summary() == "2/2 correct, depth 1");
  CHECK(oracle::exhaustive(tree, Semantics::Exact).ok());

  CHECK_THROWS_AS(import_table_text("w() = {}:{}\n", {"empty", 3}), EmptyTable);
  CHECK_THROWS_AS(import_table_text("w() = {1,2}:{3\n", {"bad", 3}), ParseError);
}

TEST_CASE("duplicate keys are recorded as defects") {
  const auto t = import_table_text("w() = {1}:{2}\nw() = {1}:{ref}\nf(0) = 0\nf(1) = 2\nf(2) = 1\n", {"dup", 2, Semantics::Exact});
  bool seen = false;
  for (const auto& d : t.defects) seen |= d.kind == "duplicate_key";
  CHECK(seen);
}

TEST_CASE("positional recovery can be switched off") {
  ImportOptions strict{"alg1", 11, Semantics::SortClasses, false};
  const auto t = builtin_table("alg1", strict);
  REQUIRE(t.has_value());
  const auto recovered = shipped("alg1");
  CHECK(t->weighings.size() < recovered.weighings.size());
  std::size_t recoveries = 0;
  for (const auto& d : recovered.defects) recoveries += d.kind == "arity_recovered";
  CHECK(recoveries > 0);
}

TEST_CASE("JSON round trip keeps the table") {
  const auto t = shipped("alg3");
  const auto back = table_from_json(table_to_json(t));
  CHECK(back.universe == t.universe);
  CHECK(back.semantics == t.semantics);
  CHECK(back.weighings == t.weighings);
  CHECK(back.outcomes == t.outcomes);
  CHECK(back.defects.size() == t.defects.size());
}

TEST_CASE("tree to table and back is the identity") {
  const auto tree = eleven_coin_tree(Semantics::SortClasses);
  const auto table = tree_to_table(*tree, "alg1", Semantics::SortClasses);
  CHECK(table_to_tree(table) == *tree);
  CHECK(to_dot(*tree).rfind("digraph", 0) == 0);
}

TEST_CASE("documented paths through the first table") {
  const auto tree = eleven_coin_tree(Semantics::SortClasses);
  CHECK(tree->internal(tree->root()).weighing.to_string() == "{1,2,3}:{4,5,6}");
  const auto one = run_strategy(*tree, FakeSet{1});
  CHECK(one.leaf == Leaf::classified(FakeSet{1}));
  CHECK(path_to_string(one.path).rfind("(2,2,0,0,0", 0) == 0);
  const auto none = run_strategy(*tree, FakeSet{});
  CHECK(none.leaf.is_uniform());
  for (Outcome o : none.path) CHECK(o == Outcome::Balance);
  CHECK(run_strategy(*tree, FakeSet{1, 2, 6, 7}).leaf == Leaf::classified(FakeSet(99)));
}

TEST_CASE("raw tables against the oracle") {
  const auto a1 = lenient(shipped("alg1"));
  const auto a2 = lenient(shipped("alg2"));
  CHECK(oracle::exhaustive(a1, Semantics::SortClasses).ok());
  const auto o2 = oracle::exhaustive(a2, Semantics::SortClasses);
  const auto r2 = verify_tree(a2, Semantics::SortClasses, VerifyOptions::eleven_coin());
  CHECK_FALSE(o2.ok());
  CHECK(r2.correct == o2.correct);
  CHECK(r2.total_cases == o2.cases);
}

TEST_CASE("repaired tables meet the eleven-coin contract") {
  for (const Semantics sem : {Semantics::SortClasses, Semantics::Exact}) {
    for (const std::string name : {"alg1", "alg2", "alg3"}) {
      CAPTURE(name);
      CAPTURE(to_string(sem));
      const auto start = std::chrono::steady_clock::now();
      const auto tree = eleven_coin_tree(sem, name);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      CHECK(secs < 1.0);
      const auto o = oracle::exhaustive(*tree, sem);
      CHECK(o.cases == 2048);
      CHECK(o.ok());
      CHECK(o.max_depth <= 7);
      const auto r = verify_tree(*tree, sem, VerifyOptions::eleven_coin());
      CHECK(r.ok());
      CHECK(r.summary() == "2048/2048 correct, depth 7");
      CHECK(oracle::uniform_isolated_after(*tree) <= 6);
      CHECK(oracle::max_classes_at(*tree, sem, 6) <= 3);
    }
  }
}

TEST_CASE("a corrupted leaf is found and repaired") {
  auto table = shipped("alg1");
  const Path p = path_from_digits({2, 2, 0, 0, 0});
  REQUIRE(table.outcomes.count(p));
  table.outcomes.insert_or_assign(p, Leaf::classified(FakeSet{2}));
  const DecisionTree broken = lenient(table);
  const auto r = verify_tree(broken, Semantics::SortClasses, VerifyOptions::eleven_coin());
  const auto o = oracle::exhaustive(broken, Semantics::SortClasses);
  CHECK(o.cases - o.correct == 1);
  CHECK(r.total_cases - r.correct == 1);

  RepairOptions ro;
  ro.uniform_deadline = 6;
  ro.gamma_depth = 6;
  const auto fixed = repair_tree(broken, Semantics::SortClasses, r, ro);
  CHECK_FALSE(fixed.replaced.empty());
  CHECK(oracle::exhaustive(fixed.tree, Semantics::SortClasses).ok());
  CHECK(verify_tree(fixed.tree, Semantics::SortClasses, VerifyOptions::eleven_coin()).ok());
}

TEST_CASE("repair leaves clean trees alone") {
  const auto tree = lenient(shipped("alg1"));
  const auto r = verify_tree(tree, Semantics::SortClasses, VerifyOptions::eleven_coin());
  REQUIRE(r.ok());
  const auto same = repair_tree(tree, Semantics::SortClasses, r, {});
  CHECK(same.replaced.empty());
  CHECK(same.tree == tree);
}

TEST_CASE("repair gives up when nothing fits the budget") {
  const auto t = DecisionTree::single_leaf(11, Leaf::uniform());
  const auto r = verify_tree(t, Semantics::SortClasses);
  REQUIRE_FALSE(r.ok());
  RepairOptions ro;
  ro.depth_budget = 0;
  CHECK_THROWS_AS(repair_tree(t, Semantics::SortClasses, r, ro), IrreparableNode);
}

TEST_CASE("verifier reports contract violations") {
  TreeBuilder b;
  const NodeId none = b.add_leaf(Leaf::classified(FakeSet{}));
  const NodeId one = b.add_leaf(Leaf::classified(FakeSet{1}));
  const NodeId root = b.add_internal(parse_weighing("{1}:{ref}"), {none, kNoNode, one});
  const DecisionTree t = std::move(b).build(1, root);
  CHECK(verify_tree(t, Semantics::Exact).ok());
  VerifyOptions tight;
  tight.depth_budget = 0;
  const auto r = verify_tree(t, Semantics::Exact, tight);
  REQUIRE_FALSE(r.ok());
  CHECK(r.defects.front().kind == DefectKind::DepthExceeded);
}
