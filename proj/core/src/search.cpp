#include "weighwright/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "weighwright/errors.hpp"

namespace weighwright {

SearchProblem SearchProblem::exact(int n, int depth) {
  return SearchProblem{HypothesisSet::full(n, Semantics::Exact), depth, kUnlimitedRefs, std::nullopt, 0};
}

SearchProblem SearchProblem::sorting(int n, int depth, std::optional<int> uniform_deadline) {
  return SearchProblem{HypothesisSet::full(n, Semantics::SortClasses), depth, 0, uniform_deadline, 0};
}

namespace {

struct Cls {
  std::uint64_t a;
  std::uint64_t b;  // == a for singletons
  friend bool operator==(const Cls&, const Cls&) = default;
  friend auto operator<=>(const Cls& x, const Cls& y) = default;
};

struct SNode;
using SPtr = std::shared_ptr<const SNode>;

struct SNode {
  bool is_leaf = false;
  Leaf leaf = Leaf::uniform();
  Weighing weighing;
  std::array<SPtr, 3> kids;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.size();
    for (std::uint64_t w : k) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct Candidate {
  int worst;
  std::uint64_t sumsq;
  Weighing weighing;
  std::vector<int> lex;  // left coins, 0, right coins, 0, refs
};

std::uint64_t pow3(int k) {
  std::uint64_t p = 1;
  for (int i = 0; i < k; ++i) {
    if (p > (std::uint64_t{1} << 60)) return p;
    p *= 3;
  }
  return p;
}

}  // namespace

struct Solver::Impl {
  SearchOptions options;
  mutable std::shared_mutex memo_mutex;
  std::unordered_map<std::vector<std::uint64_t>, SPtr, KeyHash> memo;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> hits{0};
  std::atomic<std::int64_t> elapsed_ns{0};

  // Per-call context.
  struct Ctx {
    int n;
    int refs;
    int max_pan;
    std::uint64_t full;
    std::uint64_t call_nodes = 0;
    std::chrono::steady_clock::time_point deadline;
    bool timed;
  };

  static Leaf leaf_of(const Cls& c) {
    return c.a != c.b ? Leaf::uniform() : Leaf::classified(FakeSet(c.a));
  }

  // Classes allowed once the uniform deadline has passed: those of the empty
  // and the full set.
  static bool only_extremes(const std::vector<Cls>& h, std::uint64_t full) {
    for (const Cls& c : h)
      if (c.a != 0 && c.b != 0 && c.a != full && c.b != full) return false;
    return true;
  }

  static bool has_empty(const std::vector<Cls>& h) { return !h.empty() && h.front().a == 0; }

  std::vector<std::uint64_t> key_of(const std::vector<Cls>& h, int d, int u, const Ctx& ctx) const {
    std::vector<std::uint64_t> k;
    k.reserve(2 * h.size() + 3);
    k.push_back(static_cast<std::uint64_t>(d));
    k.push_back(static_cast<std::uint64_t>(u + 1));
    k.push_back(static_cast<std::uint64_t>(ctx.refs + 1) | (static_cast<std::uint64_t>(ctx.max_pan) << 16) |
                (static_cast<std::uint64_t>(ctx.n) << 32));
    for (const Cls& c : h) {
      k.push_back(c.a);
      k.push_back(c.b);
    }
    return k;
  }

  void tick(Ctx& ctx) {
    ++nodes;
    ++ctx.call_nodes;
    if (options.node_limit && ctx.call_nodes > options.node_limit)
      throw BudgetExceeded("search node limit of " + std::to_string(options.node_limit) + " reached");
    if (ctx.timed && (ctx.call_nodes & 63) == 0 && std::chrono::steady_clock::now() > ctx.deadline)
      throw BudgetExceeded("search time limit of " + std::to_string(options.time_limit.count()) + " ms reached");
  }

  std::vector<Candidate> candidates(const std::vector<Cls>& h, int d, int u, const Ctx& ctx) const {
    // Members and their class index.
    std::vector<std::uint64_t> members;
    std::vector<std::uint32_t> owner;
    for (std::uint32_t i = 0; i < h.size(); ++i) {
      members.push_back(h[i].a);
      owner.push_back(i);
      if (h[i].b != h[i].a) {
        members.push_back(h[i].b);
        owner.push_back(i);
      }
    }
    const std::size_t words = (members.size() + 63) / 64;

    // Group coins by membership column.
    std::map<std::vector<std::uint64_t>, std::vector<CoinId>> by_column;
    std::vector<CoinId> idle;  // coins no hypothesis can distinguish
    for (CoinId c = 1; c <= ctx.n; ++c) {
      std::vector<std::uint64_t> col(words, 0);
      bool any = false;
      for (std::size_t j = 0; j < members.size(); ++j)
        if ((members[j] >> (c - 1)) & 1U) {
          col[j / 64] |= std::uint64_t{1} << (j % 64);
          any = true;
        }
      if (!any && options.symmetry_filter) {
        idle.push_back(c);
        continue;
      }
      if (!options.symmetry_filter) col.push_back(static_cast<std::uint64_t>(c));
      by_column[col].push_back(c);
    }
    std::vector<std::vector<CoinId>> groups;
    for (auto& [col, coins] : by_column) groups.push_back(coins);
    std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });

    const int g = static_cast<int>(groups.size());
    const std::uint64_t cap = pow3(d - 1);
    const int m = static_cast<int>(h.size());
    const int pad_coins = static_cast<int>(idle.size());
    const bool zero_tracked = u >= 1 && has_empty(h);

    std::vector<Candidate> out;
    std::vector<int> t(static_cast<std::size_t>(g), 0);
    std::vector<int> branch_of(members.size());
    std::vector<std::uint32_t> stamp(3 * h.size(), 0);
    std::uint32_t epoch = 0;

    auto evaluate = [&] {
      int left = 0, right = 0;
      for (int i = 0; i < g; ++i) (t[i] > 0 ? left : right) += std::abs(t[i]);
      const int gap = left - right;
      const int pad = std::abs(gap);
      const int from_idle = std::min(pad, pad_coins);
      const int refs_needed = pad - from_idle;
      if (refs_needed > 0 && ctx.refs != kUnlimitedRefs && refs_needed > ctx.refs) return;
      if (ctx.max_pan && std::max(left, right) > ctx.max_pan) return;

      Pan lp, rp;
      for (int i = 0; i < g; ++i) {
        const auto& coins = groups[static_cast<std::size_t>(i)];
        for (int k = 0; k < std::abs(t[i]); ++k) {
          if (t[i] > 0) lp.coins = lp.coins.with(coins[static_cast<std::size_t>(k)]);
          else rp.coins = rp.coins.with(coins[static_cast<std::size_t>(k)]);
        }
      }
      Pan& short_pan = gap > 0 ? rp : lp;
      for (int k = 0; k < from_idle; ++k) short_pan.coins = short_pan.coins.with(idle[static_cast<std::size_t>(k)]);
      short_pan.refs = refs_needed;

      std::array<int, 3> count{0, 0, 0};
      ++epoch;
      for (std::size_t j = 0; j < members.size(); ++j) {
        const int l = std::popcount(members[j] & lp.coins.bits());
        const int r = std::popcount(members[j] & rp.coins.bits());
        const int o = l > r ? 2 : l < r ? 1 : 0;
        branch_of[j] = o;
        auto& s = stamp[3 * owner[j] + static_cast<std::size_t>(o)];
        if (s != epoch) {
          s = epoch;
          ++count[static_cast<std::size_t>(o)];
        }
      }
      const int worst = std::max({count[0], count[1], count[2]});
      if (worst >= m) return;
      if (static_cast<std::uint64_t>(worst) > cap) return;
      if (zero_tracked && u == 1) {
        // The zero branch gets no further weighings before the deadline.
        std::vector<Cls> zero;
        for (std::size_t j = 0; j < members.size(); ++j)
          if (branch_of[j] == 0) zero.push_back(h[owner[j]]);
        if (!only_extremes(zero, ctx.full)) return;
      }
      Candidate c{worst,
                  static_cast<std::uint64_t>(count[0]) * count[0] + static_cast<std::uint64_t>(count[1]) * count[1] +
                      static_cast<std::uint64_t>(count[2]) * count[2],
                  Weighing(lp, rp),
                  {}};
      for (CoinId x : lp.coins.coins()) c.lex.push_back(x);
      c.lex.push_back(0);
      for (CoinId x : rp.coins.coins()) c.lex.push_back(x);
      c.lex.push_back(0);
      c.lex.push_back(lp.refs);
      c.lex.push_back(rp.refs);
      out.push_back(std::move(c));
    };

    auto rec = [&](auto&& self, int i, bool any) -> void {
      if (i == g) {
        if (any) evaluate();
        return;
      }
      const int s = static_cast<int>(groups[static_cast<std::size_t>(i)].size());
      const int lo = any ? -s : 0;  // the first nonzero count is positive
      for (int v = lo; v <= s; ++v) {
        t[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, any || v != 0);
      }
      t[static_cast<std::size_t>(i)] = 0;
    };
    rec(rec, 0, false);

    if (options.order == CandidateOrder::BalancedFirst) {
      std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        if (x.worst != y.worst) return x.worst < y.worst;
        if (x.sumsq != y.sumsq) return x.sumsq < y.sumsq;
        return x.lex < y.lex;
      });
    } else {
      std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.lex < y.lex; });
    }
    return out;
  }

  SPtr search(const std::vector<Cls>& h, int d, int u, Ctx& ctx) {
    if (h.size() == 1) {
      auto leaf = std::make_shared<SNode>();
      leaf->is_leaf = true;
      leaf->leaf = leaf_of(h.front());
      return leaf;
    }
    if (u >= 0 && has_empty(h)) {
      if (u == 0) {
        if (!only_extremes(h, ctx.full)) return nullptr;
        u = -1;
      }
    } else {
      u = -1;
    }
    if (d == 0 || h.size() > pow3(d)) return nullptr;

    std::vector<std::uint64_t> key;
    if (options.memoize) {
      key = key_of(h, d, u, ctx);
      std::shared_lock lock(memo_mutex);
      if (auto it = memo.find(key); it != memo.end()) {
        ++hits;
        return it->second;
      }
    }
    tick(ctx);

    SPtr result;
    for (const Candidate& c : candidates(h, d, u, ctx)) {
      std::array<std::vector<Cls>, 3> branch;
      for (const Cls& cl : h) {
        const Outcome oa = weigh(FakeSet(cl.a), c.weighing);
        const Outcome ob = weigh(FakeSet(cl.b), c.weighing);
        branch[static_cast<std::size_t>(digit(oa))].push_back(cl);
        if (ob != oa) branch[static_cast<std::size_t>(digit(ob))].push_back(cl);
      }
      std::array<std::size_t, 3> order{0, 1, 2};
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return branch[x].size() > branch[y].size(); });
      auto node = std::make_shared<SNode>();
      node->weighing = c.weighing;
      bool ok = true;
      for (std::size_t b : order) {
        if (branch[b].empty()) continue;
        const int child_u = (u >= 1 && b == 0 && has_empty(branch[b])) ? u - 1 : -1;
        SPtr sub = search(branch[b], d - 1, child_u, ctx);
        if (!sub) {
          ok = false;
          break;
        }
        node->kids[b] = std::move(sub);
      }
      if (ok) {
        result = std::move(node);
        break;
      }
    }
    if (options.memoize) {
      std::unique_lock lock(memo_mutex);
      memo.emplace(std::move(key), result);
    }
    return result;
  }

  static NodeId emit(const SNode& s, TreeBuilder& b) {
    if (s.is_leaf) return b.add_leaf(s.leaf);
    std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
    for (std::size_t i = 0; i < 3; ++i)
      if (s.kids[i]) kids[i] = emit(*s.kids[i], b);
    return b.add_internal(s.weighing, kids);
  }
};

Solver::Solver(SearchOptions options) : impl_(std::make_unique<Impl>()) { impl_->options = options; }
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::optional<DecisionTree> Solver::solve(const SearchProblem& p) {
  if (p.hypotheses.empty()) throw std::invalid_argument("search problem without hypotheses");
  if (p.depth_budget < 0) throw std::invalid_argument("negative depth budget");
  const auto start = std::chrono::steady_clock::now();
  Impl::Ctx ctx{p.hypotheses.universe(),
                p.refs,
                p.max_pan_size,
                FakeSet::full(p.hypotheses.universe()).bits(),
                0,
                start + impl_->options.time_limit,
                impl_->options.time_limit.count() > 0};
  std::vector<Cls> h;
  h.reserve(p.hypotheses.size());
  for (const auto& c : p.hypotheses.classes()) h.push_back({c.primary.bits(), c.twin.bits()});
  std::sort(h.begin(), h.end());

  struct Record {
    Impl& impl;
    std::chrono::steady_clock::time_point start;
    ~Record() {
      impl.elapsed_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
                             .count();
    }
  } record{*impl_, start};

  const int u = p.uniform_deadline ? *p.uniform_deadline : -1;
  SPtr root = impl_->search(h, p.depth_budget, u, ctx);
  if (!root) return std::nullopt;
  TreeBuilder b;
  const NodeId r = Impl::emit(*root, b);
  return std::move(b).build(p.hypotheses.universe(), r);
}

SearchStats Solver::stats() const {
  return {impl_->nodes.load(), impl_->hits.load(), std::chrono::nanoseconds(impl_->elapsed_ns.load())};
}

const SearchOptions& Solver::options() const { return impl_->options; }

void Solver::clear_memo() {
  std::unique_lock lock(impl_->memo_mutex);
  impl_->memo.clear();
}

std::optional<DecisionTree> solve(const SearchProblem& problem, const SearchOptions& options) {
  Solver s(options);
  return s.solve(problem);
}

std::optional<int> g_exact(int n, int d_max, const SearchOptions& options) {
  Solver s(options);
  for (int d = 0; d <= d_max; ++d)
    if (s.solve(SearchProblem::exact(n, d))) return d;
  return std::nullopt;
}

std::optional<int> gbar_exact(int n, int d_max, const SearchOptions& options) {
  Solver s(options);
  for (int d = 0; d <= d_max; ++d)
    if (s.solve(SearchProblem::sorting(n, d))) return d;
  return std::nullopt;
}

}  // namespace weighwright
