#pragma once

#include <iosfwd>

#include <json.hpp>

#include "weighwright/strategy_table.hpp"
#include "weighwright/verify.hpp"

namespace weighwright::cli {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification failure, infeasible, rejected input
inline constexpr int kExitUsage = 2;   // bad arguments, unreadable or unparsable input
inline constexpr int kExitBudget = 3;  // search budget exhausted

// `weighwright verify|solve|plan|bounds|session|serve|export|import ...`
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

nlohmann::json report_json(const VerificationReport& r);
nlohmann::json defects_json(const std::vector<TableDefect>& defects);

}  // namespace weighwright::cli
