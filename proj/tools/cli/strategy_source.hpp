#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "weighwright/strategy_table.hpp"
#include "weighwright/tree.hpp"
#include "weighwright/verify.hpp"

namespace weighwright::cli {

// $WEIGHWRIGHT_DATA, else the directory configured at build time.
std::filesystem::path data_dir();

// A file path, or a shipped name (alg1, alg2, alg3) looked up in data_dir()
// and then among the compiled-in tables. Throws ParseError, EmptyTable, or
// std::runtime_error when nothing matches.
StrategyTable load_strategy(const std::string& ref, const ImportOptions& import = {});

// Verification contract for a tree: the 11-coin contract for 11 coins,
// nothing beyond correctness otherwise.
VerifyOptions contract_for(const DecisionTree& t);

struct PreparedTree {
  DecisionTree tree;
  VerificationReport raw;
  std::optional<VerificationReport> repaired;
  std::size_t repaired_nodes = 0;
};

// Builds and verifies the tree; repairs it when asked and needed.
PreparedTree prepare_tree(const StrategyTable& table, Semantics semantics, bool repair);

}  // namespace weighwright::cli
