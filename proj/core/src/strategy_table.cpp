#include "weighwright/strategy_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "builtin_tables.hpp"
#include "weighwright/errors.hpp"

namespace weighwright {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Expected key of the i-th row of a block of depth `arity`; first digit varies fastest.
Path positional_key(std::size_t index, std::size_t arity) {
  Path p(arity, Outcome::Balance);
  for (std::size_t j = 0; j < arity; ++j) {
    p[j] = static_cast<Outcome>(index % 3);
    index /= 3;
  }
  return p;
}

bool is_one_digit_deletion(const Path& shorter, const Path& full) {
  if (shorter.size() + 1 != full.size()) return false;
  for (std::size_t skip = 0; skip < full.size(); ++skip) {
    bool ok = true;
    for (std::size_t i = 0, j = 0; i < shorter.size(); ++i, ++j) {
      if (j == skip) ++j;
      if (shorter[i] != full[j]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

struct RowParser {
  std::size_t line;
  std::string_view text;
  std::size_t offset = 0;  // of `text` within the line

  [[noreturn]] void fail(std::size_t pos, const std::string& what) const {
    throw ParseError(line, offset + pos + 1, what);
  }

  // Parses "x(d,d,...)" starting at text[0]; returns key and position after ')'.
  std::pair<Path, std::size_t> key() const {
    std::size_t i = 1;
    if (i >= text.size() || text[i] != '(') fail(i, "expected '('");
    ++i;
    Path p;
    for (;;) {
      while (i < text.size() && text[i] == ' ') ++i;
      if (i >= text.size()) fail(i, "unterminated key");
      if (text[i] == ')') break;
      if (text[i] < '0' || text[i] > '2') fail(i, "outcome digit must be 0, 1 or 2");
      p.push_back(static_cast<Outcome>(text[i] - '0'));
      ++i;
      while (i < text.size() && text[i] == ' ') ++i;
      if (i < text.size() && text[i] == ',') ++i;
    }
    return {p, i + 1};
  }

  std::string_view value(std::size_t pos, std::size_t& value_pos) const {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size() || text[pos] != '=') fail(pos, "expected '='");
    ++pos;
    while (pos < text.size() && text[pos] == ' ') ++pos;
    value_pos = pos;
    return trim(text.substr(pos));
  }
};

struct RawLeaf {
  std::size_t line;
  Path key;
  std::uint64_t value;
  bool uniform;
};

void finish_table(StrategyTable& t, const std::vector<RawLeaf>& leaves, int universe_hint) {
  int universe = universe_hint;
  if (universe == 0) {
    for (const auto& [k, w] : t.weighings) universe = std::max(universe, w.coins().max());
    for (const auto& l : leaves) universe = std::max(universe, FakeSet(l.value).max());
    universe = std::max(universe, 1);
  }
  t.universe = universe;
  const std::uint64_t full = FakeSet::full(universe).bits();
  for (const auto& l : leaves) {
    if (l.value > full) throw ParseError(l.line, 1, "class value outside the coin universe");
    const bool zero_path =
        std::all_of(l.key.begin(), l.key.end(), [](Outcome o) { return o == Outcome::Balance; });
    const bool uniform = l.uniform || (t.semantics == Semantics::SortClasses && zero_path && l.value == full);
    if (t.outcomes.count(l.key))
      t.defects.push_back({l.line, l.key, "duplicate_key", "f row repeats an earlier key; last row wins"});
    t.outcomes.insert_or_assign(l.key, uniform ? Leaf::uniform() : Leaf::classified(FakeSet(l.value)));
  }
  if (t.outcomes.empty()) throw EmptyTable("strategy table has no classification rows");
  for (const auto& [k, w] : t.weighings)
    if (!w.coins().fits(universe)) throw ParseError(0, 0, "weighing at " + path_to_string(k) + " outside universe");
}

}  // namespace

StrategyTable import_table_text(std::istream& in, const ImportOptions& options) {
  StrategyTable t;
  t.name = options.name;
  t.semantics = options.semantics;
  std::vector<RawLeaf> leaves;
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> block_arity;
  std::size_t block_index = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t lead = raw.find_first_not_of(" \t");

    if (line.rfind("The ", 0) == 0) {
      int k = 0;
      auto [p, ec] = std::from_chars(line.data() + 4, line.data() + line.size(), k);
      if (ec == std::errc{} && k >= 1 && std::string_view(p).find("weighing") != std::string_view::npos) {
        block_arity = static_cast<std::size_t>(k - 1);
        block_index = 0;
      } else {
        block_arity.reset();
      }
      continue;
    }

    RowParser row{line_no, line, lead};
    const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(line.front())));
    if (kind != 'w' && kind != 'f') row.fail(0, "expected a w(...) or f(...) row");
    auto [key, after] = row.key();
    std::size_t value_pos = 0;
    std::string_view value = row.value(after, value_pos);

    if (kind == 'w') {
      Weighing w;
      try {
        w = parse_weighing(value);
      } catch (const std::invalid_argument& e) {
        row.fail(value_pos, e.what());
      } catch (const UnbalancedPans& e) {
        row.fail(value_pos, e.what());
      }
      bool keep = true;
      if (block_arity) {
        const Path expected = positional_key(block_index++, *block_arity);
        if (key.size() != *block_arity) {
          if (options.recover_by_position && is_one_digit_deletion(key, expected)) {
            t.defects.push_back({line_no, expected, "arity_recovered",
                                 "printed key " + path_to_string(key) + " re-keyed by position"});
            key = expected;
          } else {
            t.defects.push_back({line_no, key, "arity_mismatch",
                                 "key length " + std::to_string(key.size()) + " in a block of length " +
                                     std::to_string(*block_arity) + "; row set aside"});
            keep = false;
          }
        } else if (key != expected) {
          t.defects.push_back({line_no, key, "out_of_order", "expected " + path_to_string(expected)});
        }
      }
      if (!keep) continue;
      if (t.weighings.count(key))
        t.defects.push_back({line_no, key, "duplicate_key", "w row repeats an earlier key; last row wins"});
      t.weighings.insert_or_assign(key, w);
    } else {
      RawLeaf leaf{line_no, key, 0, false};
      if (value == "uniform" || value == "~") {
        leaf.uniform = true;
      } else {
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), leaf.value);
        if (ec != std::errc{} || p != value.data() + value.size()) row.fail(value_pos, "expected an integer class");
      }
      leaves.push_back(leaf);
    }
  }
  finish_table(t, leaves, options.universe);
  return t;
}

StrategyTable import_table_text(std::string_view text, const ImportOptions& options) {
  std::istringstream in{std::string(text)};
  return import_table_text(in, options);
}

namespace {

[[noreturn]] void json_fail(std::string_view text, std::size_t byte, const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError(line, col, what);
}

Path json_path(const json& j) {
  Path p;
  for (const auto& d : j) {
    const int v = d.get<int>();
    if (v < 0 || v > 2) throw std::invalid_argument("outcome digit must be 0, 1 or 2");
    p.push_back(static_cast<Outcome>(v));
  }
  return p;
}

Pan json_pan(const json& j) {
  Pan pan;
  for (const auto& c : j.at("coins")) {
    const int id = c.get<int>();
    if (id < 1 || id > kMaxUniverse) throw std::invalid_argument("coin id out of range");
    if (pan.coins.contains(id)) throw std::invalid_argument("duplicate coin in pan");
    pan.coins = pan.coins.with(id);
  }
  pan.refs = j.value("refs", 0);
  return pan;
}

json pan_json(const Pan& p) { return {{"coins", p.coins.coins()}, {"refs", p.refs}}; }

}  // namespace

StrategyTable table_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    json_fail(text, e.byte == 0 ? 0 : e.byte - 1, e.what());
  }
  StrategyTable t;
  try {
    t.name = doc.value("name", std::string{});
    t.universe = doc.at("universe").get<int>();
    if (t.universe < 1 || t.universe > kMaxUniverse) throw std::invalid_argument("universe out of range");
    const auto sem = parse_semantics(doc.value("semantics", std::string("sort")));
    if (!sem) throw std::invalid_argument("semantics must be \"exact\" or \"sort\"");
    t.semantics = *sem;
    for (const auto& n : doc.at("nodes")) {
      const Path key = json_path(n.at("path"));
      if (t.weighings.count(key)) t.defects.push_back({0, key, "duplicate_key", "node repeats a path"});
      t.weighings.insert_or_assign(key, Weighing(json_pan(n.at("left")), json_pan(n.at("right"))));
    }
    const FakeSet full = FakeSet::full(t.universe);
    for (const auto& l : doc.at("leaves")) {
      const Path key = json_path(l.at("path"));
      const json& cls = l.at("class");
      Leaf leaf = Leaf::uniform();
      if (cls.is_string()) {
        if (cls.get<std::string>() != "uniform") throw std::invalid_argument("class must be an integer or \"uniform\"");
      } else {
        const FakeSet s(cls.get<std::uint64_t>());
        if (!s.fits(t.universe)) throw std::invalid_argument("class outside the coin universe");
        if (!l.value("uniform", false)) leaf = Leaf::classified(s);
        else if (s != full) throw std::invalid_argument("uniform leaf must carry the full-set code");
      }
      if (t.outcomes.count(key)) t.defects.push_back({0, key, "duplicate_key", "leaf repeats a path"});
      t.outcomes.insert_or_assign(key, leaf);
    }
    if (doc.contains("defects")) {
      for (const auto& d : doc["defects"])
        t.defects.push_back({d.value("line", std::size_t{0}), json_path(d.value("path", json::array())),
                             d.value("kind", std::string{}), d.value("detail", std::string{})});
    }
    for (const auto& [k, w] : t.weighings)
      if (!w.coins().fits(t.universe)) throw std::invalid_argument("weighing outside the coin universe");
  } catch (const json::exception& e) {
    throw ParseError(0, 0, std::string("invalid strategy document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, 0, std::string("invalid strategy document: ") + e.what());
  } catch (const UnbalancedPans& e) {
    throw ParseError(0, 0, std::string("invalid strategy document: ") + e.what());
  }
  if (t.outcomes.empty()) throw EmptyTable("strategy document has no leaves");
  return t;
}

std::string table_to_json(const StrategyTable& t, int indent) {
  json doc;
  doc["version"] = 1;
  doc["name"] = t.name;
  doc["universe"] = t.universe;
  doc["semantics"] = to_string(t.semantics);
  json nodes = json::array();
  for (const auto& [k, w] : t.weighings)
    nodes.push_back({{"path", path_digits(k)}, {"left", pan_json(w.left())}, {"right", pan_json(w.right())}});
  doc["nodes"] = std::move(nodes);
  json leaves = json::array();
  const std::uint64_t full = FakeSet::full(t.universe).bits();
  for (const auto& [k, l] : t.outcomes) {
    json j{{"path", path_digits(k)}};
    if (l.is_uniform()) {
      j["class"] = full;
      j["uniform"] = true;
    } else {
      j["class"] = l.set().bits();
    }
    leaves.push_back(std::move(j));
  }
  doc["leaves"] = std::move(leaves);
  if (!t.defects.empty()) {
    json defects = json::array();
    for (const auto& d : t.defects) {
      json j{{"path", path_digits(d.key)}, {"kind", d.kind}, {"detail", d.detail}};
      if (d.line) j["line"] = d.line;
      defects.push_back(std::move(j));
    }
    doc["defects"] = std::move(defects);
  }
  return doc.dump(indent);
}

StrategyTable load_table(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return table_from_json(text);
  ImportOptions opts;
  opts.name = file.stem().string();
  return import_table_text(std::string_view(text), opts);
}

void save_table(const StrategyTable& t, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << table_to_json(t) << '\n';
}

std::optional<StrategyTable> builtin_table(std::string_view name, const ImportOptions& options) {
  const auto text = detail::builtin_table_text(name);
  if (!text) return std::nullopt;
  ImportOptions opts = options;
  if (opts.name.empty()) opts.name = std::string(name);
  if (opts.universe == 0) opts.universe = 11;
  return import_table_text(*text, opts);
}

std::vector<std::string> builtin_table_names() { return {"alg1", "alg2", "alg3"}; }

namespace {

struct TreeAssembler {
  const StrategyTable& table;
  std::set<Path> claimed;
  TreeBuilder builder;

  const Leaf* leaf_for(Path p) {
    for (;;) {
      if (auto it = table.outcomes.find(p); it != table.outcomes.end()) {
        claimed.insert(p);
        return &it->second;
      }
      if (p.empty() || p.back() != Outcome::Balance) return nullptr;
      p.pop_back();
    }
  }

  NodeId build(Path& p, int depth_guard) {
    if (depth_guard > 64) throw MalformedTree("table nests deeper than 64 weighings");
    auto w = table.weighings.find(p);
    if (w != table.weighings.end() && !w->second.is_noop()) {
      std::array<NodeId, 3> kids{kNoNode, kNoNode, kNoNode};
      for (Outcome o : kOutcomes) {
        p.push_back(o);
        kids[static_cast<std::size_t>(digit(o))] = build(p, depth_guard + 1);
        p.pop_back();
      }
      return builder.add_internal(w->second, kids);
    }
    if (const Leaf* leaf = leaf_for(p)) return builder.add_leaf(*leaf);
    return kNoNode;
  }
};

}  // namespace

DecisionTree table_to_tree(const StrategyTable& t, BuildMode mode, std::vector<TableDefect>* defects) {
  std::vector<TableDefect> local;
  std::vector<TableDefect>& out = defects ? *defects : local;
  TreeAssembler a{t, {}, {}};
  Path p;
  const NodeId root = a.build(p, 0);
  if (root == kNoNode) throw MissingWeighing(Path{});

  DecisionTree tree = std::move(a.builder).build(t.universe, root);

  // Every f-entry should end up on a leaf; diagnose the ones that do not.
  for (const auto& [key, leaf] : t.outcomes) {
    if (a.claimed.count(key)) continue;
    NodeId id = tree.root();
    Path walked;
    for (Outcome o : key) {
      if (tree.is_leaf(id)) break;
      const NodeId next = tree.child(id, o);
      if (next == kNoNode) break;
      walked.push_back(o);
      id = next;
    }
    const bool below_gap = walked.size() < key.size() && !tree.is_leaf(id);
    if (below_gap) {
      Path gap = walked;
      gap.push_back(key[walked.size()]);
      if (mode == BuildMode::Strict) throw MissingWeighing(gap);
      out.push_back({0, key, "missing_weighing", "no weighing at " + path_to_string(gap)});
    } else {
      out.push_back({0, key, "unclaimed_leaf", "f-entry shadowed by the node at " + path_to_string(walked)});
    }
  }
  return tree;
}

StrategyTable tree_to_table(const DecisionTree& tree, std::string name, Semantics semantics) {
  StrategyTable t;
  t.name = std::move(name);
  t.universe = tree.universe();
  t.semantics = semantics;
  tree.visit([&](NodeId id, const Path& p, int) {
    if (tree.is_leaf(id)) t.outcomes.emplace(p, tree.leaf(id));
    else t.weighings.emplace(p, tree.internal(id).weighing);
  });
  return t;
}

std::string to_dot(const DecisionTree& tree, std::string_view name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    if (tree.is_leaf(id)) {
      const Leaf& l = tree.leaf(id);
      os << "  n" << i << " [shape=box,label=\"" << (l.is_uniform() ? std::string("~") : l.set().to_string())
         << "\"];\n";
    } else {
      const auto& in = tree.internal(id);
      os << "  n" << i << " [shape=ellipse,label=\"" << in.weighing.to_string() << "\"];\n";
      for (Outcome o : kOutcomes) {
        const NodeId c = in.children[static_cast<std::size_t>(digit(o))];
        if (c != kNoNode) os << "  n" << i << " -> n" << c << " [label=\"" << symbol(o) << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace weighwright
