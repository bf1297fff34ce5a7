// Acceptance checks, one verdict line per criterion.
// Usage: acceptance [criterion...]   (no argument runs all nine)

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "weighwright/bounds.hpp"
#include "weighwright/composition.hpp"
#include "weighwright/plan_runner.hpp"
#include "weighwright/repair.hpp"
#include "weighwright/search.hpp"
#include "weighwright/strategy_table.hpp"
#include "weighwright/verify.hpp"

using namespace weighwright;

namespace {

// Pinned tolerances.
constexpr double kTableSeconds = 1.0;
constexpr double kSearchSeconds = 60.0;
constexpr double kSpliceSeconds = 30.0;
constexpr int kPlanMaxN = 200;
constexpr int kSampledFakeSets = 100000;
constexpr std::int64_t kSandwichMaxN = 1000000;

const std::vector<std::string> kTables{"alg1", "alg2", "alg3"};

struct Verdict {
  bool pass = true;
  std::ostringstream notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " FAILED{" << what << "}";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Repaired {
  DecisionTree tree;
  VerificationReport raw;
  std::size_t repaired_nodes = 0;
  double seconds = 0;
};

Repaired build_and_repair(const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  ImportOptions io;
  io.name = name;
  const StrategyTable table = *builtin_table(name, io);
  DecisionTree tree = table_to_tree(table, BuildMode::Lenient);
  const auto contract = VerifyOptions::eleven_coin();
  Repaired r{tree, verify_tree(tree, Semantics::SortClasses, contract), 0, 0};
  if (!r.raw.ok()) {
    RepairOptions ro;
    ro.uniform_deadline = contract.uniform_deadline;
    ro.gamma_depth = contract.gamma_depth;
    auto fixed = repair_tree(tree, Semantics::SortClasses, r.raw, ro);
    r.tree = std::move(fixed.tree);
    r.repaired_nodes = fixed.replaced.size();
  }
  r.seconds = seconds_since(t0);
  return r;
}

const std::vector<Repaired>& repaired_tables() {
  static const std::vector<Repaired> all = [] {
    std::vector<Repaired> v;
    for (const auto& name : kTables) v.push_back(build_and_repair(name));
    return v;
  }();
  return all;
}

void archive_raw(const std::string& name, const Repaired& r) {
  std::ofstream f("acceptance_raw_" + name + ".txt");
  f << name << " raw: " << r.raw.summary() << ", " << r.raw.defects.size() << " defects\n";
  for (const auto& d : r.raw.defects) f << to_string(d.kind) << " " << path_to_string(d.prefix) << " " << d.detail << '\n';
  f << "repaired nodes: " << r.repaired_nodes << '\n';
}

Verdict tables_verify() {
  Verdict v;
  for (std::size_t i = 0; i < kTables.size(); ++i) {
    const auto& r = repaired_tables()[i];
    archive_raw(kTables[i], r);
    const auto o = oracle::exhaustive(r.tree, Semantics::SortClasses);
    const auto report = verify_tree(r.tree, Semantics::SortClasses, VerifyOptions::eleven_coin());
    v.notes << " " << kTables[i] << ": raw " << r.raw.correct << "/" << r.raw.total_cases << ", repaired "
            << r.repaired_nodes << " nodes, " << o.correct << "/" << o.cases << " depth " << o.max_depth << " in "
            << static_cast<int>(r.seconds * 1000) << " ms;";
    v.require(o.cases == 2048 && o.ok(), kTables[i] + " oracle classification");
    v.require(report.ok() && report.correct == 2048, kTables[i] + " verifier report");
    v.require(o.max_depth <= 7, kTables[i] + " depth <= 7");
    v.require(r.seconds < kTableSeconds, kTables[i] + " runtime < 1 s");
  }
  return v;
}

Verdict uniform_by_six() {
  Verdict v;
  for (std::size_t i = 0; i < kTables.size(); ++i) {
    const int after = oracle::uniform_isolated_after(repaired_tables()[i].tree);
    v.notes << " " << kTables[i] << ": " << after << ";";
    v.require(after >= 0 && after <= 6, kTables[i] + " uniform class isolated after <= 6");
  }
  return v;
}

Verdict gamma_at_six() {
  Verdict v;
  for (std::size_t i = 0; i < kTables.size(); ++i) {
    const auto worst = oracle::max_classes_at(repaired_tables()[i].tree, Semantics::SortClasses, 6);
    v.notes << " " << kTables[i] << ": max " << worst << " classes;";
    v.require(worst >= 1 && worst <= 3, kTables[i] + " at most 3 classes at depth 6");
  }
  return v;
}

Verdict small_values() {
  Verdict v;
  const auto timed = [&](const std::string& label, const std::function<std::optional<int>()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto value = f();
    const double s = seconds_since(t0);
    v.require(s < kSearchSeconds, label + " within 60 s");
    return value;
  };
  const std::vector<int> g_expected{1, 2, 3, 3};
  for (int n = 1; n <= 4; ++n) {
    const auto g = timed("g(" + std::to_string(n) + ")", [n] { return g_exact(n, 5); });
    v.notes << " g(" << n << ")=" << (g ? std::to_string(*g) : "?");
    v.require(g == g_expected[static_cast<std::size_t>(n - 1)], "g(" + std::to_string(n) + ")");
  }
  const auto gbar3 = timed("gbar(3)", [] { return gbar_exact(3, 5); });
  v.notes << " gbar(3)=" << (gbar3 ? std::to_string(*gbar3) : "?");
  v.require(gbar3 == 3, "gbar(3) = 3 expected, search finds " + (gbar3 ? std::to_string(*gbar3) : std::string("none")));
  for (int n = 1; n <= 6; ++n) {
    const int budget = static_cast<int>(upper(n));
    if (n == 3) {
      const auto t = timed("sort 3", [&] { return solve(SearchProblem::sorting(3, budget)) ? std::optional<int>(1) : std::nullopt; });
      v.require(t.has_value(), "gbar(3) <= 2");
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto tree = solve(SearchProblem::sorting(n, budget, budget - 1));
    v.require(seconds_since(t0) < kSearchSeconds, "gbar(" + std::to_string(n) + ") within 60 s");
    const bool ok = tree && oracle::exhaustive(*tree, Semantics::SortClasses).ok() &&
                    oracle::uniform_isolated_after(*tree) <= budget - 1;
    v.notes << " gbar(" << n << ")<=" << budget;
    v.require(ok, "gbar(" + std::to_string(n) + ") <= " + std::to_string(budget) + " with uniformity one weighing early");
  }
  return v;
}

Verdict splice_fourteen() {
  Verdict v;
  const DecisionTree& f = repaired_tables()[0].tree;
  for (const Semantics sem : {Semantics::Exact, Semantics::SortClasses}) {
    const auto t0 = std::chrono::steady_clock::now();
    DecisionTree base = f;
    if (sem == Semantics::Exact) base = *eleven_coin_tree(Semantics::Exact);
    SpliceOptions o;
    o.semantics = sem;
    if (sem == Semantics::SortClasses) o.uniform_deadline = 8;
    const auto r = extend_by_three(base, {12, 13, 14}, o);
    const auto check = oracle::exhaustive(r.tree, sem);
    const double s = seconds_since(t0);
    v.notes << " " << to_string(sem) << ": depth " << check.max_depth << ", " << check.correct << "/" << check.cases
            << " in " << static_cast<int>(s * 1000) << " ms;";
    v.require(check.cases == 16384 && check.ok(), std::string(to_string(sem)) + " exhaustive 2^14");
    v.require(check.max_depth <= 9 && upper(14) == 9, std::string(to_string(sem)) + " depth <= 9");
    v.require(s < kSpliceSeconds, std::string(to_string(sem)) + " within 30 s");
  }
  return v;
}

bool classified_right(const PlanResult& r, const std::vector<char>& fake, Semantics sem) {
  std::vector<CoinId> expect;
  for (std::size_t c = 1; c < fake.size(); ++c)
    if (fake[c]) expect.push_back(static_cast<CoinId>(c));
  const bool uniform = expect.empty() || expect.size() + 1 == fake.size();
  if (sem == Semantics::SortClasses && uniform) return r.uniform;
  return !r.uniform && r.fakes == expect;
}

Verdict composition_bound() {
  Verdict v;
  for (const Semantics sem : {Semantics::Exact, Semantics::SortClasses}) {
    int over = 0;
    for (int n = 1; n <= kPlanMaxN; ++n) {
      const auto p = plan(n, sem);
      const bool exception = n == 3 && sem == Semantics::Exact && p.total_weighings == 3;
      if (p.total_weighings > upper(n) && !exception) ++over;
    }
    v.require(over == 0, std::string(to_string(sem)) + " plans within the bound");

    const int n = 25;
    const auto p = std::make_shared<const CompositePlan>(plan(n, sem));
    v.require(p->total_weighings == 16, "plan(25) uses 16 weighings");
    std::vector<std::uint64_t> cases{0, oracle::full(n)};
    for (int c = 1; c <= n; ++c) cases.push_back(1ULL << (c - 1));
    std::uint64_t tail = 0;
    for (CoinId c : p->remainder) tail |= 1ULL << (c - 1);
    cases.push_back(tail);
    std::mt19937_64 rng(20250);
    for (int i = 0; i < kSampledFakeSets; ++i) cases.push_back(rng() & oracle::full(n));
    std::size_t wrong = 0;
    int most = 0;
    for (const auto bits : cases) {
      std::vector<char> fake(static_cast<std::size_t>(n) + 1, 0);
      for (int c = 1; c <= n; ++c) fake[static_cast<std::size_t>(c)] = (bits >> (c - 1)) & 1U;
      const auto sim = simulate_plan(p, fake);
      if (!classified_right(sim.result, fake, sem)) ++wrong;
      most = std::max(most, sim.weighings);
    }
    v.notes << " " << to_string(sem) << ": n<=200 over bound " << over << ", n=25 " << cases.size() << " sets, "
            << wrong << " wrong, max " << most << " weighings;";
    v.require(wrong == 0, std::string(to_string(sem)) + " zero misclassifications at n = 25");
    v.require(most <= 16, std::string(to_string(sem)) + " at most 16 weighings at n = 25");
  }
  return v;
}

Verdict paired_coins() {
  Verdict v;
  std::vector<std::pair<CoinId, CoinId>> pairs;
  for (CoinId i = 1; i <= 11; ++i) pairs.emplace_back(i, i + 11);
  const DecisionTree t = paired_coin_tree(pairs);
  std::uint64_t correct = 0;
  int worst = 0;
  for (std::uint64_t m = 0; m < 2048; ++m) {
    std::uint64_t fake = 0;
    for (int i = 0; i < 11; ++i) fake |= ((m >> i) & 1U) ? 1ULL << i : 1ULL << (i + 11);
    const auto w = oracle::walk(t, fake);
    worst = std::max(worst, w.counted);
    if (!w.fell_off && !t.leaf(w.leaf).is_uniform() && t.leaf(w.leaf).set().bits() == fake) ++correct;
  }
  v.notes << " " << correct << "/2048 orientations, depth " << worst << ";";
  v.require(correct == 2048, "every orientation classified");
  v.require(worst <= 7, "depth <= 7");
  v.require(verify_tree(t, pair_orientations(pairs), {}).ok(), "verifier agrees");
  return v;
}

Verdict bounds_sandwich() {
  Verdict v;
  v.require(lower_g(11) == 7 && lower_gbar(11) == 7 && upper(11) == 7, "n = 11 row is 7 7 7");
  std::int64_t broken = 0;
  for (std::int64_t n = 1; n <= kSandwichMaxN; ++n)
    if (lower_gbar(n) > lower_g(n) || lower_g(n) > upper(n)) ++broken;
  std::int64_t mismatched = 0;
  for (std::int64_t n = 1; n <= 300; ++n)
    if (lower_g(n) != oracle::lower_g(n) || lower_gbar(n) != oracle::lower_gbar(n)) ++mismatched;
  v.notes << " sandwich violations up to 10^6: " << broken << ", big-integer mismatches up to 300: " << mismatched << ";";
  v.require(broken == 0, "lower <= upper for n <= 10^6");
  v.require(mismatched == 0, "exact integer agreement");
  return v;
}

Verdict search_soundness() {
  Verdict v;
  int solved = 0;
  for (const Semantics sem : {Semantics::Exact, Semantics::SortClasses})
    for (int n = 1; n <= 5; ++n)
      for (int d = 0; d <= 4; ++d) {
        const auto p = sem == Semantics::Exact ? SearchProblem::exact(n, d) : SearchProblem::sorting(n, d);
        const auto t = solve(p);
        if (!t) continue;
        ++solved;
        const bool ok = verify_tree(*t, p.hypotheses, {p.depth_budget, std::nullopt, std::nullopt, 3}).ok() &&
                        oracle::exhaustive(*t, sem).ok();
        v.require(ok, "solve output verifies (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
      }
  const bool infeasible = !solve(SearchProblem::exact(3, 2)).has_value();
  v.notes << " " << solved << " solved trees verified; exact n=3 d=2 " << (infeasible ? "infeasible" : "feasible") << ";";
  v.require(infeasible, "n = 3, depth 2 infeasible");
  return v;
}

struct Criterion {
  const char* title;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"repaired 11-coin tables classify all 2048 sets in <= 7 weighings, < 1 s each", tables_verify},
    {"all-balance path isolates the uniform class within 6 weighings", uniform_by_six},
    {"at most 3 classes at every depth-6 node", gamma_at_six},
    {"exact small values g(1..4) = 1,2,3,3, gbar(3) = 3, gbar(n) <= ceil(7n/11) for n <= 6", small_values},
    {"11-coin tree plus 3 coins: depth <= 9, all 2^14 sets, < 30 s", splice_fourteen},
    {"plans within ceil(7n/11) for n <= 200; n = 25 sampled and adversarial sets", composition_bound},
    {"paired coins: all 2^11 orientations in <= 7 weighings", paired_coins},
    {"bounds: n = 11 gives 7 7 7, lower <= upper up to 10^6", bounds_sandwich},
    {"search output verifies; exact n = 3 in 2 weighings is infeasible", search_soundness},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  bool all = true;
  for (int k : which) {
    if (k < 1 || k > 9) {
      std::cerr << "criterion must be 1..9\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = kCriteria[k - 1].run();
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << kCriteria[k - 1].title << " |"
              << v.notes.str() << " (" << static_cast<int>(seconds_since(t0) * 1000) << " ms)\n";
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
