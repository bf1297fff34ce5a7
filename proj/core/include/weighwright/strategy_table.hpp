#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weighwright/hypothesis.hpp"
#include "weighwright/tree.hpp"
#include "weighwright/weighing.hpp"

namespace weighwright {

struct TableDefect {
  std::size_t line = 0;  // 0 when not tied to a source line
  Path key;
  std::string kind;  // duplicate_key, arity_recovered, arity_mismatch, out_of_order, unclaimed_leaf, missing_weighing
  std::string detail;
};

// Flat w(.)/f(.) serialization of an adaptive tree, keyed by outcome prefix.
struct StrategyTable {
  std::string name;
  int universe = 0;
  Semantics semantics = Semantics::SortClasses;
  std::map<Path, Weighing> weighings;
  std::map<Path, Leaf> outcomes;
  std::vector<TableDefect> defects;
};

struct ImportOptions {
  std::string name;
  int universe = 0;  // 0: infer from the largest coin id mentioned
  Semantics semantics = Semantics::SortClasses;
  // Rows under a "The k-th weighing" header whose key has the wrong length are
  // re-keyed from their position in the block when the printed key is the
  // positional key with one digit missing. Off: such rows are set aside.
  bool recover_by_position = true;
};

// Text format: "w(2,0) = {1,2}:{3,4}" and "f(2,0,1) = 99" rows, optional
// "The k-th weighing" block headers, '#' comments. Throws ParseError, EmptyTable.
StrategyTable import_table_text(std::istream& in, const ImportOptions& options = {});
StrategyTable import_table_text(std::string_view text, const ImportOptions& options = {});

// Versioned JSON strategy document. Throws ParseError, EmptyTable.
StrategyTable table_from_json(std::string_view text);
std::string table_to_json(const StrategyTable& t, int indent = 1);

// Sniffs JSON vs table text. Throws std::runtime_error when unreadable.
StrategyTable load_table(const std::filesystem::path& file);
void save_table(const StrategyTable& t, const std::filesystem::path& file);

// The three transcribed 11-coin tables compiled into the library.
std::optional<StrategyTable> builtin_table(std::string_view name, const ImportOptions& options = {});
std::vector<std::string> builtin_table_names();

enum class BuildMode {
  Strict,   // MissingWeighing when an f-entry lies below an absent weighing
  Lenient,  // absent branches stay empty and are recorded as defects
};

// Real weighings become internal nodes; a prefix with no real weighing becomes
// a leaf taking f(p), or f of p with trailing zeros dropped. No-op rows vanish.
DecisionTree table_to_tree(const StrategyTable& t, BuildMode mode = BuildMode::Strict,
                           std::vector<TableDefect>* defects = nullptr);
StrategyTable tree_to_table(const DecisionTree& tree, std::string name, Semantics semantics);

std::string to_dot(const DecisionTree& tree, std::string_view name = "strategy");

}  // namespace weighwright
