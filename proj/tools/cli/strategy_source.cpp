#include "strategy_source.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "weighwright/repair.hpp"

#ifndef WEIGHWRIGHT_DEFAULT_DATA_DIR
#define WEIGHWRIGHT_DEFAULT_DATA_DIR "data"
#endif

namespace weighwright::cli {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("WEIGHWRIGHT_DATA"); env && *env) return env;
  return WEIGHWRIGHT_DEFAULT_DATA_DIR;
}

StrategyTable load_strategy(const std::string& ref, const ImportOptions& import) {
  namespace fs = std::filesystem;
  const fs::path direct(ref);
  if (fs::is_regular_file(direct)) {
    if (direct.extension() == ".json") return load_table(direct);
    std::ifstream in(direct);
    ImportOptions opts = import;
    if (opts.name.empty()) opts.name = direct.stem().string();
    return import_table_text(in, opts);
  }
  if (ref.find('/') == std::string::npos && ref.find('.') == std::string::npos) {
    const fs::path shipped = data_dir() / (ref + ".json");
    if (fs::is_regular_file(shipped)) return load_table(shipped);
    if (auto t = builtin_table(ref, import)) return *t;
  }
  throw std::runtime_error("cannot read strategy " + ref);
}

VerifyOptions contract_for(const DecisionTree& t) {
  return t.universe() == 11 ? VerifyOptions::eleven_coin() : VerifyOptions{};
}

PreparedTree prepare_tree(const StrategyTable& table, Semantics semantics, bool repair) {
  std::vector<TableDefect> build_defects;
  DecisionTree tree = table_to_tree(table, BuildMode::Lenient, &build_defects);
  const VerifyOptions vo = contract_for(tree);
  PreparedTree out{tree, verify_tree(tree, semantics, vo), std::nullopt, 0};
  if (repair && !out.raw.ok()) {
    RepairOptions ro;
    ro.depth_budget = vo.depth_budget.value_or(std::max(tree.depth(), 1));
    ro.uniform_deadline = vo.uniform_deadline;
    ro.gamma_depth = vo.gamma_depth;
    auto fixed = repair_tree(tree, semantics, out.raw, ro);
    out.tree = std::move(fixed.tree);
    out.repaired_nodes = fixed.replaced.size();
    out.repaired = verify_tree(out.tree, semantics, vo);
  }
  return out;
}

}  // namespace weighwright::cli
