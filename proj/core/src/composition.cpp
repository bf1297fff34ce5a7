#include "weighwright/composition.hpp"

#include <algorithm>
#include <json.hpp>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "weighwright/bounds.hpp"
#include "weighwright/errors.hpp"
#include "weighwright/repair.hpp"
#include "weighwright/strategy_table.hpp"
#include "weighwright/verify.hpp"

namespace weighwright {

const char* to_string(FinisherCase::Kind k) {
  switch (k) {
    case FinisherCase::Kind::GammaOne: return "gamma_one";
    case FinisherCase::Kind::GammaTwo: return "gamma_two";
    case FinisherCase::Kind::DeltaPlain: return "delta_plain";
    case FinisherCase::Kind::DeltaProduct: return "delta_product";
    case FinisherCase::Kind::DeltaDoubleProduct: return "delta_double_product";
    case FinisherCase::Kind::DeltaTail: return "delta_tail";
  }
  return "unknown";
}

const char* to_string(PlanUnit::Kind k) {
  switch (k) {
    case PlanUnit::Kind::Block: return "block";
    case PlanUnit::Kind::Spliced: return "spliced";
    case PlanUnit::Kind::Remainder: return "remainder";
  }
  return "unknown";
}

FinisherCase::Kind classify_gamma(const std::vector<FakeSet>& gamma, std::vector<CoinId>& designated) {
  designated.clear();
  if (gamma.size() == 1) return FinisherCase::Kind::GammaOne;
  if (gamma.size() == 2) {
    const FakeSet diff = gamma[0] ^ gamma[1];
    if (diff.empty()) throw std::invalid_argument("classes must be distinct");
    designated.push_back(diff.min());
    return FinisherCase::Kind::GammaTwo;
  }
  if (gamma.size() != 3) throw std::invalid_argument("case analysis needs 1 to 3 classes");

  std::array<int, 3> idx{0, 1, 2};
  // Two classes each owning a coin the other two lack.
  do {
    const FakeSet X = gamma[idx[0]], Y = gamma[idx[1]], Z = gamma[idx[2]];
    const FakeSet x_own = X - (Y | Z), y_own = Y - (X | Z);
    if (!x_own.empty() && !y_own.empty()) {
      designated = {x_own.min(), y_own.min()};
      return FinisherCase::Kind::DeltaPlain;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));

  idx = {0, 1, 2};
  do {
    const FakeSet X = gamma[idx[0]], Y = gamma[idx[1]], Z = gamma[idx[2]];
    if (!X.subset_of(Y | Z) || !Y.subset_of(X | Z)) continue;
    const FakeSet zx = Z & X, zy = Z & Y;
    if (!zx.subset_of(zy) && !zy.subset_of(zx)) {
      designated = {(zx - zy).min(), (zy - zx).min()};
      return FinisherCase::Kind::DeltaProduct;
    }
    if (!zx.subset_of(zy)) continue;  // the mirrored labelling handles it
    if (!X.subset_of(zy)) {
      designated = {(X - zy).min(), (zy - X).min()};
      return FinisherCase::Kind::DeltaDoubleProduct;
    }
    if (!(Y - X).empty() && !(Z - Y).empty()) {
      designated = {(Y - X).min(), (Z - Y).min()};
      return FinisherCase::Kind::DeltaTail;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  throw std::invalid_argument("classes admit no case of the analysis");
}

namespace {

CoinSet project(FakeSet s, const std::vector<CoinId>& coins) {
  CoinSet out;
  for (std::size_t i = 0; i < coins.size(); ++i)
    if (s.contains(coins[i])) out = out.with(static_cast<CoinId>(i + 1));
  return out;
}

// Whether the designated coins tell every member of every class apart from
// members of the other classes.
bool separates(const std::vector<HypothesisClass>& gamma, const std::vector<CoinId>& coins) {
  std::map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (FakeSet s : {gamma[i].primary, gamma[i].twin}) {
      const auto p = project(s, coins).bits();
      auto [it, fresh] = owner.emplace(p, i);
      if (!fresh && it->second != i) return false;
    }
  }
  return true;
}

std::vector<CoinId> least_separating(const std::vector<HypothesisClass>& gamma, int universe) {
  std::vector<CoinId> pick;
  for (int size = 1; size <= 3; ++size) {
    std::vector<CoinId> cur(static_cast<std::size_t>(size));
    auto rec = [&](auto&& self, int pos, CoinId from) -> bool {
      if (pos == size) return separates(gamma, cur);
      for (CoinId c = from; c <= universe; ++c) {
        cur[static_cast<std::size_t>(pos)] = c;
        if (self(self, pos + 1, c + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0, 1)) return cur;
  }
  throw std::invalid_argument("no three coins separate the classes");
}

struct SpliceBuilder {
  const DecisionTree& f;
  std::array<CoinId, 3> b;
  const SpliceOptions& options;
  int universe;
  int k;
  Solver solver;
  TreeBuilder out;
  SpliceResult* result;

  FinisherCase make_finisher(const std::vector<HypothesisClass>& gamma, const Path& prefix, int used,
                             const std::vector<CoinId>& known_normal, std::vector<std::pair<FakeSet, FakeSet>>& lift) {
    FinisherCase fc;
    const bool has_uniform = std::any_of(gamma.begin(), gamma.end(), [](const auto& c) { return c.merged(); });
    if (gamma.size() > 3)
      throw PreconditionViolated(std::to_string(gamma.size()) + " classes left before the last weighing", prefix);

    if (!has_uniform) {
      std::vector<FakeSet> sets;
      for (const auto& c : gamma) sets.push_back(c.primary);
      fc.kind = classify_gamma(sets, fc.designated);
      if (!separates(gamma, fc.designated)) fc.designated = least_separating(gamma, f.universe());
    } else {
      fc.kind = gamma.size() == 1 ? FinisherCase::Kind::GammaOne : FinisherCase::Kind::GammaTwo;
      fc.designated = least_separating(gamma, f.universe());
    }

    const int nd = static_cast<int>(fc.designated.size());
    const int local_n = nd + 3;
    const FakeSet full_b = FakeSet::full(3);
    std::vector<HypothesisClass> reduced;
    lift.assign(std::size_t{1} << local_n, {FakeSet{}, FakeSet{}});
    auto add = [&](FakeSet a_part, FakeSet t) {
      const FakeSet local(project(a_part, fc.designated).bits() | (t.bits() << nd));
      lift[local.bits()] = {a_part, t};
      return local;
    };
    for (const auto& c : gamma) {
      for (std::uint64_t tb = 0; tb < 8; ++tb) {
        const FakeSet t(tb);
        if (!c.merged()) {
          reduced.push_back(HypothesisClass::single(add(c.primary, t)));
          continue;
        }
        if (t.empty()) {
          reduced.push_back({add(c.primary, t), add(c.twin, full_b)});
        } else {
          reduced.push_back(HypothesisClass::single(add(c.primary, t)));
        }
        if (t != full_b) reduced.push_back(HypothesisClass::single(add(c.twin, t)));
      }
    }

    SearchProblem p{HypothesisSet(local_n, options.semantics, reduced), k + 2 - used,
                    options.semantics == Semantics::Exact ? kUnlimitedRefs : static_cast<int>(known_normal.size()),
                    std::nullopt, 0};
    if (has_uniform && options.uniform_deadline) p.uniform_deadline = *options.uniform_deadline - used;
    std::optional<DecisionTree> tree = solver.solve(p);
    if (!tree && options.semantics == Semantics::SortClasses) {
      p.refs = kUnlimitedRefs;
      tree = solver.solve(p);
      if (tree) fc.external_reference = true;
    }
    if (!tree) throw FinisherInfeasible("no finisher within " + std::to_string(p.depth_budget) + " weighings", prefix);
    for (const auto& node : tree->nodes())
      if (const auto* in = std::get_if<InternalNode>(&node); in && in->weighing.refs() > 0) fc.needs_reference = true;
    fc.finisher = std::move(*tree);
    return fc;
  }

  NodeId emit_finisher(const FinisherCase& fc, NodeId id, const std::vector<std::pair<FakeSet, FakeSet>>& lift,
                       const std::vector<CoinId>& known_normal) {
    const DecisionTree& t = fc.finisher;
    const int nd = static_cast<int>(fc.designated.size());
    auto to_global = [&](CoinSet local) {
      CoinSet g;
      for (CoinId c : local.coins())
        g = g.with(c <= nd ? fc.designated[static_cast<std::size_t>(c - 1)] : b[static_cast<std::size_t>(c - nd - 1)]);
      return g;
    };
    if (t.is_leaf(id)) {
      const Leaf& l = t.leaf(id);
      if (l.is_uniform()) return out.add_leaf(l);
      const auto& [a_part, tb] = lift[l.set().bits()];
      CoinSet fakes = a_part;
      for (CoinId c : tb.coins()) fakes = fakes.with(b[static_cast<std::size_t>(c - 1)]);
      return out.add_leaf(Leaf::classified(fakes));
    }
    const Weighing& w = t.internal(id).weighing;
    Pan left{to_global(w.left().coins), w.left().refs};
    Pan right{to_global(w.right().coins), w.right().refs};
    if (options.semantics == Semantics::SortClasses && !fc.external_reference) {
      std::size_t next = 0;
      for (Pan* pan : {&left, &right}) {
        for (; pan->refs > 0; --pan->refs) pan->coins = pan->coins.with(known_normal.at(next++));
      }
    }
    std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
    for (std::size_t i = 0; i < 3; ++i) {
      const NodeId c = t.internal(id).children[i];
      if (c != kNoNode) kids[i] = emit_finisher(fc, c, lift, known_normal);
    }
    return out.add_internal(Weighing(left, right), kids);
  }

  NodeId copy(NodeId id, Path& path, int used, const std::map<NodeId, std::vector<HypothesisClass>>& gamma) {
    if (auto it = gamma.find(id); it != gamma.end()) {
      std::vector<CoinId> known_normal;
      if (options.semantics == Semantics::SortClasses) {
        CoinSet touched;
        for (const auto& c : it->second) touched = touched | c.primary | c.twin;
        known_normal = touched.complement(f.universe()).coins();
      }
      std::vector<std::pair<FakeSet, FakeSet>> lift;
      FinisherCase fc = make_finisher(it->second, path, used, known_normal, lift);
      const NodeId root = emit_finisher(fc, fc.finisher.root(), lift, known_normal);
      result->needs_external_reference = result->needs_external_reference || fc.external_reference;
      result->splices.push_back({path, used, std::move(fc)});
      return root;
    }
    if (f.is_leaf(id)) return out.add_leaf(f.leaf(id));
    const auto& in = f.internal(id);
    const int next = used + (in.weighing.is_noop() ? 0 : 1);
    std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
    for (Outcome o : kOutcomes) {
      const NodeId c = in.children[static_cast<std::size_t>(digit(o))];
      if (c == kNoNode) continue;
      path.push_back(o);
      kids[static_cast<std::size_t>(digit(o))] = copy(c, path, next, gamma);
      path.pop_back();
    }
    return out.add_internal(in.weighing, kids);
  }
};

}  // namespace

SpliceResult extend_by_three(const DecisionTree& f, std::array<CoinId, 3> b, const SpliceOptions& options) {
  const int a = f.universe();
  std::set<CoinId> distinct(b.begin(), b.end());
  if (distinct.size() != 3) throw std::invalid_argument("the three new coins must be distinct");
  for (CoinId c : b)
    if (c <= a || c > kMaxUniverse) throw std::invalid_argument("new coins must lie outside the block");
  const int universe = std::max(a, *distinct.rbegin());
  const int k = f.depth();
  if (k < 1) throw PreconditionViolated("block strategy must use at least one weighing", Path{});

  // Classes left at each splice point: the node reached after k - 1 weighings,
  // or an earlier leaf.
  const HypothesisSet hs = HypothesisSet::full(a, options.semantics);
  std::map<NodeId, std::vector<HypothesisClass>> gamma;
  for (const auto& c : hs.classes()) {
    for (FakeSet s : {c.primary, c.twin}) {
      NodeId id = f.root();
      int used = 0;
      Path path;
      while (!f.is_leaf(id) && used < k - 1) {
        const auto& in = f.internal(id);
        if (!in.weighing.is_noop()) ++used;
        const Outcome o = weigh(s, in.weighing);
        path.push_back(o);
        id = in.children[static_cast<std::size_t>(digit(o))];
        if (id == kNoNode) throw MalformedTree("block strategy has no branch at " + path_to_string(path));
      }
      auto& g = gamma[id];
      if (std::find(g.begin(), g.end(), c) == g.end()) g.push_back(c);
    }
  }

  SpliceResult result{DecisionTree::single_leaf(universe, Leaf::uniform()), {}, false};
  SpliceBuilder builder{f, b, options, universe, k, Solver(options.search), TreeBuilder{}, &result};
  Path path;
  const NodeId root = builder.copy(f.root(), path, 0, gamma);
  result.tree = std::move(builder.out).build(universe, root);
  return result;
}

DecisionTree extend_by_one(const DecisionTree& t, Semantics semantics) {
  const int n = t.universe();
  if (n + 1 > kMaxUniverse) throw std::invalid_argument("universe full");
  const CoinId fresh = n + 1;
  TreeBuilder b;
  auto rec = [&](auto&& self, NodeId id) -> NodeId {
    if (!t.is_leaf(id)) {
      const auto& in = t.internal(id);
      std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
      for (std::size_t i = 0; i < 3; ++i)
        if (in.children[i] != kNoNode) kids[i] = self(self, in.children[i]);
      return b.add_internal(in.weighing, kids);
    }
    const Leaf& leaf = t.leaf(id);
    if (leaf.is_uniform()) {
      // Coin n+1 against coin 1: equal keeps everything uniform.
      const NodeId same = b.add_leaf(Leaf::uniform());
      const NodeId light = b.add_leaf(Leaf::classified(FakeSet::full(n)));
      const NodeId heavy = b.add_leaf(Leaf::classified(FakeSet::single(fresh)));
      return b.add_internal(Weighing(Pan{CoinSet::single(fresh)}, Pan{CoinSet::single(1)}), {same, light, heavy});
    }
    const FakeSet s = leaf.set();
    const FakeSet normals = s.complement(n);
    Pan other;
    if (!normals.empty()) other.coins = CoinSet::single(normals.min());
    else if (semantics == Semantics::Exact) other.refs = 1;
    else throw std::invalid_argument("no normal coin to compare against");
    const NodeId normal = b.add_leaf(Leaf::classified(s));
    const NodeId fake = b.add_leaf(Leaf::classified(s.with(fresh)));
    return b.add_internal(Weighing(Pan{CoinSet::single(fresh)}, other), {normal, kNoNode, fake});
  };
  const NodeId root = rec(rec, t.root());
  return std::move(b).build(n + 1, root);
}

namespace {

void check_pairs(const std::vector<std::pair<CoinId, CoinId>>& pairs) {
  if (pairs.size() != 11) throw std::invalid_argument("need exactly 11 pairs");
  std::set<CoinId> seen;
  for (auto [r, p] : pairs) {
    if (r < 1 || p < 1 || r > kMaxUniverse || p > kMaxUniverse) throw std::invalid_argument("coin id out of range");
    if (!seen.insert(r).second || !seen.insert(p).second) throw std::invalid_argument("pairs must be disjoint");
  }
}

int pairs_universe(const std::vector<std::pair<CoinId, CoinId>>& pairs) {
  int u = 0;
  for (auto [r, p] : pairs) u = std::max({u, r, p});
  return u;
}

FakeSet orientation_set(const std::vector<std::pair<CoinId, CoinId>>& pairs, FakeSet reps_fake) {
  FakeSet s;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    s = s.with(reps_fake.contains(static_cast<CoinId>(i + 1)) ? pairs[i].first : pairs[i].second);
  return s;
}

}  // namespace

HypothesisSet pair_orientations(const std::vector<std::pair<CoinId, CoinId>>& pairs) {
  check_pairs(pairs);
  std::vector<HypothesisClass> classes;
  for (std::uint64_t x = 0; x < 2048; ++x) classes.push_back(HypothesisClass::single(orientation_set(pairs, FakeSet(x))));
  return HypothesisSet(pairs_universe(pairs), Semantics::Exact, std::move(classes));
}

DecisionTree paired_coin_tree(const std::vector<std::pair<CoinId, CoinId>>& pairs) {
  check_pairs(pairs);
  const auto base = eleven_coin_tree(Semantics::SortClasses);
  std::vector<CoinId> relabel(12, 0);
  for (std::size_t i = 0; i < 11; ++i) relabel[i + 1] = pairs[i].first;
  const int universe = pairs_universe(pairs);

  TreeBuilder b;
  auto rec = [&](auto&& self, NodeId id) -> NodeId {
    if (!base->is_leaf(id)) {
      const auto& in = base->internal(id);
      std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
      for (std::size_t i = 0; i < 3; ++i)
        if (in.children[i] != kNoNode) kids[i] = self(self, in.children[i]);
      auto map = [&](CoinSet s) {
        CoinSet o;
        for (CoinId c : s.coins()) o = o.with(relabel[static_cast<std::size_t>(c)]);
        return o;
      };
      return b.add_internal(Weighing(Pan{map(in.weighing.left().coins)}, Pan{map(in.weighing.right().coins)}), kids);
    }
    const Leaf& leaf = base->leaf(id);
    if (!leaf.is_uniform()) return b.add_leaf(Leaf::classified(orientation_set(pairs, leaf.set())));
    // All representatives alike: one representative against its partner.
    const NodeId reps_light = b.add_leaf(Leaf::classified(orientation_set(pairs, FakeSet{})));
    const NodeId reps_heavy = b.add_leaf(Leaf::classified(orientation_set(pairs, FakeSet::full(11))));
    return b.add_internal(Weighing(Pan{CoinSet::single(pairs[0].first)}, Pan{CoinSet::single(pairs[0].second)}),
                          {kNoNode, reps_light, reps_heavy});
  };
  const NodeId root = rec(rec, base->root());
  return std::move(b).build(universe, root);
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const DecisionTree> eleven_coin_tree(Semantics semantics, const std::string& name) {
  static std::map<std::pair<Semantics, std::string>, std::shared_ptr<const DecisionTree>> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find({semantics, name}); it != cache.end()) return it->second;
  }
  ImportOptions io;
  io.semantics = semantics;
  auto table = builtin_table(name, io);
  if (!table) throw std::invalid_argument("unknown strategy " + name);
  DecisionTree raw = table_to_tree(*table, BuildMode::Lenient);
  const auto vo = VerifyOptions::eleven_coin();
  const auto report = verify_tree(raw, semantics, vo);
  RepairOptions ro;
  ro.uniform_deadline = vo.uniform_deadline;
  ro.gamma_depth = vo.gamma_depth;
  auto tree = std::make_shared<const DecisionTree>(repair_tree(raw, semantics, report, ro).tree);
  std::lock_guard lock(cache_mutex());
  return cache.emplace(std::make_pair(semantics, name), tree).first->second;
}

std::shared_ptr<const DecisionTree> base_tree(int n, Semantics semantics) {
  static std::map<std::pair<int, Semantics>, std::shared_ptr<const DecisionTree>> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find({n, semantics}); it != cache.end()) return it->second;
  }
  auto tree = std::make_shared<const DecisionTree>(synthesize_base(n, semantics));
  std::lock_guard lock(cache_mutex());
  return cache.emplace(std::make_pair(n, semantics), tree).first->second;
}

std::shared_ptr<const SpliceResult> spliced_tree(Semantics semantics) {
  static std::map<Semantics, std::shared_ptr<const SpliceResult>> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find(semantics); it != cache.end()) return it->second;
  }
  const auto block = eleven_coin_tree(semantics);
  SpliceOptions lo;
  lo.semantics = semantics;
  // Uniform found one weighing early leaves room for the comparison weighing.
  if (semantics == Semantics::SortClasses) lo.uniform_deadline = block->depth() + 1;
  auto r = std::make_shared<const SpliceResult>(extend_by_three(*block, {12, 13, 14}, lo));
  std::lock_guard lock(cache_mutex());
  return cache.emplace(semantics, r).first->second;
}

int CompositePlan::bound() const { return static_cast<int>(upper(n)); }

namespace {

std::optional<int> uniform_leaf_depth(const DecisionTree& t) {
  std::optional<int> d;
  t.visit([&](NodeId id, const Path&, int depth) {
    if (t.is_leaf(id) && t.leaf(id).is_uniform()) d = std::max(d.value_or(0), depth);
  });
  return d;
}

PlanUnit make_unit(PlanUnit::Kind kind, std::vector<CoinId> coins, std::string strategy,
                   std::shared_ptr<const DecisionTree> tree, Semantics semantics, bool multi) {
  PlanUnit u;
  u.kind = kind;
  u.coins = std::move(coins);
  u.strategy = std::move(strategy);
  u.depth = tree->depth();
  u.cost = u.depth;
  if (semantics == Semantics::SortClasses) {
    u.uniform_by = uniform_leaf_depth(*tree);
    if (multi && u.uniform_by) u.cost = std::max(u.depth, *u.uniform_by + 1);
  }
  for (const auto& node : tree->nodes())
    if (const auto* in = std::get_if<InternalNode>(&node); in && in->weighing.refs() > 0)
      u.needs_external_reference = semantics == Semantics::SortClasses;
  u.tree = std::move(tree);
  return u;
}

std::vector<CoinId> range(int from, int count) {
  std::vector<CoinId> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace

CompositePlan plan(int n, Semantics semantics) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > 1'000'000) throw std::invalid_argument("n too large");
  CompositePlan p;
  p.n = n;
  p.semantics = semantics;
  if (n <= 11) {
    p.remainder = range(1, n);
    p.units.push_back(make_unit(PlanUnit::Kind::Remainder, p.remainder,
                                n == 11 ? "alg1" : "base(" + std::to_string(n) + ")", base_tree(n, semantics), semantics,
                                false));
    p.total_weighings = p.units.front().cost;
    return p;
  }
  const int m = n / 11, r = n % 11;
  const bool multi = m > 1 || r != 0;
  for (int i = 0; i < m; ++i) p.blocks.push_back(range(11 * i + 1, 11));
  p.remainder = range(11 * m + 1, r);
  const int plain_blocks = r == 3 ? m - 1 : m;
  for (int i = 0; i < plain_blocks; ++i)
    p.units.push_back(make_unit(PlanUnit::Kind::Block, p.blocks[static_cast<std::size_t>(i)], "alg1",
                                eleven_coin_tree(semantics), semantics, multi));
  if (r == 3) {
    const auto spliced = spliced_tree(semantics);
    std::vector<CoinId> coins = p.blocks.back();
    coins.insert(coins.end(), p.remainder.begin(), p.remainder.end());
    auto tree = std::shared_ptr<const DecisionTree>(spliced, &spliced->tree);
    p.units.push_back(make_unit(PlanUnit::Kind::Spliced, coins, "alg1+3", tree, semantics, multi));
    SpliceInfo info;
    info.block = static_cast<std::size_t>(m - 1);
    info.remainder = p.remainder;
    for (const auto& s : spliced->splices) ++info.cases[to_string(s.finisher.kind)];
    info.needs_external_reference = spliced->needs_external_reference;
    p.splice = info;
  } else if (r > 0) {
    p.units.push_back(make_unit(PlanUnit::Kind::Remainder, p.remainder, "base(" + std::to_string(r) + ")",
                                base_tree(r, semantics), semantics, multi));
  }
  for (const auto& u : p.units) p.total_weighings += u.cost;
  return p;
}

CompositePlan plan_from_tree(std::shared_ptr<const DecisionTree> tree, Semantics semantics, std::string name) {
  CompositePlan p;
  p.n = tree->universe();
  p.semantics = semantics;
  p.remainder = range(1, p.n);
  p.units.push_back(make_unit(PlanUnit::Kind::Remainder, p.remainder, std::move(name), std::move(tree), semantics, false));
  p.total_weighings = p.units.front().cost;
  return p;
}

std::string plan_header(const CompositePlan& p) {
  std::ostringstream os;
  os << p.total_weighings << " weighings";
  if (p.total_weighings > p.bound())
    os << " (exceeds ⌈7n/11⌉ = " << p.bound() << "; known exception at n = 3)";
  else
    os << " (bound " << p.bound() << ")";
  return os.str();
}

std::string plan_summary(const CompositePlan& p) {
  std::ostringstream os;
  os << plan_header(p) << '\n';
  os << "coins: " << p.n << ", semantics: " << to_string(p.semantics) << ", blocks: " << p.blocks.size()
     << ", remainder: " << p.remainder.size() << '\n';
  auto span = [](const std::vector<CoinId>& c) {
    if (c.empty()) return std::string("-");
    return std::to_string(c.front()) + ".." + std::to_string(c.back());
  };
  for (std::size_t i = 0; i < p.units.size(); ++i) {
    const auto& u = p.units[i];
    os << "  unit " << i + 1 << ": " << to_string(u.kind) << " coins " << span(u.coins) << ", " << u.strategy
       << ", depth " << u.depth;
    if (u.cost != u.depth) os << " + 1 comparison";
    os << '\n';
  }
  if (p.splice) {
    os << "  splice on block " << p.splice->block + 1 << " with coins " << span(p.splice->remainder) << ":";
    for (const auto& [kind, count] : p.splice->cases) os << ' ' << kind << '=' << count;
    if (p.splice->needs_external_reference) os << " (needs a normal coin from an earlier block)";
    os << '\n';
  }
  return os.str();
}

std::string plan_to_json(const CompositePlan& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["semantics"] = to_string(p.semantics);
  j["total_weighings"] = p.total_weighings;
  j["bound"] = p.bound();
  j["blocks"] = p.blocks;
  j["remainder"] = p.remainder;
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : p.units) {
    nlohmann::json ju{{"kind", to_string(u.kind)}, {"coins", u.coins}, {"strategy", u.strategy},
                      {"depth", u.depth}, {"cost", u.cost}};
    if (u.uniform_by) ju["uniform_by"] = *u.uniform_by;
    if (u.needs_external_reference) ju["needs_external_reference"] = true;
    units.push_back(std::move(ju));
  }
  j["units"] = std::move(units);
  if (p.splice) {
    j["splice"] = {{"kind", "three-coin"},
                   {"block", p.splice->block},
                   {"remainder", p.splice->remainder},
                   {"cases", p.splice->cases},
                   {"needs_external_reference", p.splice->needs_external_reference}};
  } else {
    j["splice"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace weighwright
