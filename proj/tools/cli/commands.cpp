#include "commands.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "service.hpp"
#include "session.hpp"
#include "strategy_source.hpp"
#include "weighwright/bounds.hpp"
#include "weighwright/composition.hpp"
#include "weighwright/errors.hpp"
#include "weighwright/search.hpp"

namespace weighwright::cli {

using nlohmann::json;

nlohmann::json report_json(const VerificationReport& r) {
  json defects = json::array();
  for (const auto& d : r.defects)
    defects.push_back({{"prefix", path_to_string(d.prefix)}, {"kind", to_string(d.kind)}, {"detail", d.detail}});
  json j{{"summary", r.summary()},   {"ok", r.ok()},
         {"total_cases", r.total_cases}, {"correct", r.correct},
         {"max_depth", r.max_depth}, {"max_gamma", r.max_gamma},
         {"defects", std::move(defects)}};
  j["uniform_resolved_by"] = r.uniform_resolved_by ? json(*r.uniform_resolved_by) : json(nullptr);
  return j;
}

nlohmann::json defects_json(const std::vector<TableDefect>& defects) {
  json out = json::array();
  for (const auto& d : defects)
    out.push_back({{"line", d.line}, {"key", path_to_string(d.key)}, {"kind", d.kind}, {"detail", d.detail}});
  return out;
}

namespace {

const std::map<std::string, Semantics> kSemanticsNames{{"exact", Semantics::Exact}, {"sort", Semantics::SortClasses}};

void write_text(const std::string& text, const std::string& file, std::ostream& out) {
  if (file.empty() || file == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(file);
  if (!f) throw std::runtime_error("cannot write " + file);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string tree_json(const DecisionTree& tree, const std::string& name, Semantics sem) {
  return table_to_json(tree_to_table(tree, name, sem));
}

struct VerifyArgs {
  std::string strategy;
  std::optional<std::string> semantics;
  bool repair = false;
  bool json = false;
  bool no_recover = false;
  std::string archive;
  std::string output;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  ImportOptions import;
  import.recover_by_position = !a.no_recover;
  const StrategyTable table = load_strategy(a.strategy, import);
  const Semantics sem = a.semantics ? kSemanticsNames.at(*a.semantics) : table.semantics;
  PreparedTree p = prepare_tree(table, sem, a.repair);

  json doc{{"strategy", table.name.empty() ? a.strategy : table.name},
           {"semantics", to_string(sem)},
           {"load_defects", table.defects.size()},
           {"raw", report_json(p.raw)}};
  if (p.repaired) {
    doc["repaired_nodes"] = p.repaired_nodes;
    doc["repaired"] = report_json(*p.repaired);
  }
  if (!a.archive.empty()) {
    json archived = doc;
    archived["load_defect_list"] = defects_json(table.defects);
    write_text(archived.dump(1), a.archive, out);
  }
  const VerificationReport& final_report = p.repaired ? *p.repaired : p.raw;
  const bool ok = a.repair ? final_report.ok() : final_report.ok() && table.defects.empty();
  if (!a.output.empty() && ok) write_text(tree_json(p.tree, table.name, sem), a.output, out);

  if (a.json) {
    out << doc.dump(1) << '\n';
  } else {
    if (!table.defects.empty()) out << "load: " << table.defects.size() << " table defects\n";
    if (a.repair && p.repaired) {
      out << "raw: " << p.raw.summary() << ", " << p.raw.defects.size() << " defects\n";
      out << "repaired " << p.repaired_nodes << (p.repaired_nodes == 1 ? " node\n" : " nodes\n");
    }
    out << final_report.summary() << '\n';
    if (final_report.uniform_resolved_by) out << "uniform class isolated after " << *final_report.uniform_resolved_by << " weighings\n";
    if (!ok && final_report.ok()) out << "raw transcription has table defects; --repair accepts it once the tree verifies\n";
    if (!a.repair || !final_report.ok())
      for (const auto& d : final_report.defects)
        out << "  " << to_string(d.kind) << " at " << path_to_string(d.prefix) << ": " << d.detail << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

struct SolveArgs {
  int n = 0;
  int depth = 0;
  std::string semantics = "exact";
  std::optional<int> uniform_by;
  std::uint64_t budget = 0;
  long time_limit_ms = 0;
  int max_n = 8;
  std::string output;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 1 || a.n > a.max_n) {
    err << "n = " << a.n << " is outside the search guard 1.." << a.max_n << " (raise it with --max-n)\n";
    return kExitUsage;
  }
  const Semantics sem = kSemanticsNames.at(a.semantics);
  SearchProblem problem = sem == Semantics::Exact ? SearchProblem::exact(a.n, a.depth)
                                                   : SearchProblem::sorting(a.n, a.depth, a.uniform_by);
  if (sem == Semantics::Exact) problem.uniform_deadline = a.uniform_by;
  SearchOptions options;
  options.node_limit = a.budget;
  options.time_limit = std::chrono::milliseconds(a.time_limit_ms);
  try {
    const auto tree = solve(problem, options);
    if (!tree) {
      out << "infeasible at depth " << a.depth << '\n';
      return kExitFailed;
    }
    write_text(tree_json(*tree, "solve-" + std::to_string(a.n), sem), a.output, out);
    if (!a.output.empty() && a.output != "-") out << "wrote " << a.output << " (depth " << tree->depth() << ")\n";
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "search budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  }
}

int cmd_plan(int n, const std::string& semantics, bool as_json, const std::string& export_file, std::ostream& out) {
  const CompositePlan p = plan(n, kSemanticsNames.at(semantics));
  if (!export_file.empty()) write_text(plan_to_json(p), export_file, out);
  if (export_file == "-") return kExitOk;
  out << (as_json ? plan_to_json(p) : plan_summary(p));
  return kExitOk;
}

int cmd_bounds(std::int64_t from, std::optional<std::int64_t> to, bool as_json, std::ostream& out, std::ostream& err) {
  const std::int64_t last = to.value_or(from);
  if (from < 1 || last < from) {
    err << "need 1 <= from <= to\n";
    return kExitUsage;
  }
  const auto rows = bounds_table(from, last);
  out << (as_json ? bounds_json(rows) : bounds_tsv(rows));
  return kExitOk;
}

int cmd_session(const SessionSpec& spec, const std::string& log_file, std::istream& in, std::ostream& out) {
  Session session("terminal", spec);
  if (!log_file.empty()) session.attach_log(log_file, true);
  const int total = session.runner().plan().total_weighings;
  out << "Session for " << session.runner().plan().n << " coins, at most " << total << " weighings.\n";
  out << "Answer each weighing with < (left lighter), = (balance) or > (left heavier).\n";
  std::string token;
  while (!session.finished()) {
    const PlacedWeighing& w = session.runner().next();
    out << "Weighing " << session.runner().weighings_used() + 1 << ": " << w.describe() << '\n' << "> " << std::flush;
    if (!(in >> token)) {
      out << "\ninput ended before the session finished\n";
      return kExitFailed;
    }
    const auto o = parse_symbol(token);
    if (!o) {
      out << "unrecognized answer '" << token << "'; enter <, = or >\n";
      continue;
    }
    if (session.submit(*o) == Session::Submit::Contradiction)
      out << "contradictory outcome history: no fake set fits '" << token << "' here; re-check that weighing\n";
  }
  out << "Result: " << session.runner().result().describe() << '\n';
  return kExitOk;
}

std::atomic<Service*> g_running_service{nullptr};

int cmd_serve(const std::string& host, int port, const std::string& log_dir, std::ostream& out, std::ostream& err) {
  Service::Options opts;
  if (!log_dir.empty()) opts.log_dir = log_dir;
  Service service(opts);
  const int bound = service.bind(host, port);
  if (bound < 0) {
    err << "cannot listen on " << host << ":" << port << '\n';
    return kExitFailed;
  }
  out << "listening on http://" << host << ":" << bound << '\n' << std::flush;
  g_running_service = &service;
  auto previous = std::signal(SIGINT, [](int) {
    if (Service* s = g_running_service.load()) s->stop();
  });
  const bool ok = service.run();
  std::signal(SIGINT, previous);
  g_running_service = nullptr;
  return ok ? kExitOk : kExitFailed;
}

int cmd_export(const std::string& strategy, std::optional<std::string> semantics, bool dot, bool repair,
               const std::string& output, std::ostream& out) {
  const StrategyTable table = load_strategy(strategy);
  const Semantics sem = semantics ? kSemanticsNames.at(*semantics) : table.semantics;
  if (!repair) {
    if (dot) {
      write_text(to_dot(table_to_tree(table, BuildMode::Lenient), table.name), output, out);
    } else {
      write_text(table_to_json(table), output, out);
    }
    return kExitOk;
  }
  PreparedTree p = prepare_tree(table, sem, true);
  const auto& report = p.repaired ? *p.repaired : p.raw;
  if (!report.ok()) throw IrreparableNode(report.defects.empty() ? Path{} : report.defects.front().prefix);
  write_text(dot ? to_dot(p.tree, table.name) : tree_json(p.tree, table.name, sem), output, out);
  return kExitOk;
}

int cmd_import(const std::string& file, const std::string& name, const std::string& semantics, bool no_recover,
               const std::string& output, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file);
  ImportOptions opts;
  opts.name = name.empty() ? std::filesystem::path(file).stem().string() : name;
  opts.semantics = kSemanticsNames.at(semantics);
  opts.recover_by_position = !no_recover;
  const StrategyTable table = import_table_text(in, opts);
  write_text(table_to_json(table), output, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive weighing strategies for finding counterfeit coins", "weighwright"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "weighwright 0.3.0");
  const auto semantics_check = CLI::IsMember({"exact", "sort"});

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exhaustively verify a strategy (alg1, alg2, alg3 or a file)");
  verify->add_option("strategy", va.strategy, "Shipped name or strategy file")->required();
  verify->add_option("--semantics", va.semantics, "exact or sort (default: the table's own)")->check(semantics_check);
  verify->add_flag("--repair", va.repair, "Regenerate failing subtrees by search");
  verify->add_flag("--json", va.json, "Print the report as JSON");
  verify->add_flag("--no-recover", va.no_recover, "Do not re-key damaged rows by position");
  verify->add_option("--archive", va.archive, "Write the raw and repaired reports to this file");
  verify->add_option("-o,--output", va.output, "Write the (repaired) tree as JSON when it verifies");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Search for a strategy of bounded depth");
  solve_cmd->add_option("n", sa.n, "Number of coins")->required();
  solve_cmd->add_option("--depth", sa.depth, "Weighing budget")->required();
  solve_cmd->add_option("--semantics", sa.semantics, "exact or sort")->check(semantics_check);
  solve_cmd->add_option("--uniform-by", sa.uniform_by, "Isolate the uniform class within this many weighings");
  solve_cmd->add_option("--budget", sa.budget, "Node limit (0: none)");
  solve_cmd->add_option("--time-limit", sa.time_limit_ms, "Time limit in milliseconds (0: none)");
  solve_cmd->add_option("--max-n", sa.max_n, "Largest n accepted");
  solve_cmd->add_option("-o,--output", sa.output, "Write the tree here instead of stdout");

  int plan_n = 0;
  std::string plan_sem = "exact", plan_export;
  bool plan_json = false;
  auto* plan_cmd = app.add_subcommand("plan", "Composite strategy for n coins");
  plan_cmd->add_option("n", plan_n, "Number of coins")->required()->check(CLI::Range(1, 1000000));
  plan_cmd->add_option("--semantics", plan_sem, "exact or sort")->check(semantics_check);
  plan_cmd->add_option("--export", plan_export, "Write the plan as JSON to a file (- for stdout)");
  plan_cmd->add_flag("--json", plan_json, "Print JSON instead of the summary");

  std::int64_t b_from = 0;
  std::optional<std::int64_t> b_to;
  bool b_json = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Lower and upper bounds for a range of n");
  bounds_cmd->add_option("from", b_from)->required();
  bounds_cmd->add_option("to", b_to);
  bounds_cmd->add_flag("--json", b_json);

  std::optional<int> s_n;
  std::optional<std::string> s_tree;
  std::string s_sem = "sort", s_log;
  auto* session_cmd = app.add_subcommand("session", "Run a strategy interactively, one weighing at a time");
  session_cmd->add_option("n", s_n, "Number of coins");
  session_cmd->add_option("--tree", s_tree, "Shipped name or strategy file instead of a plan");
  session_cmd->add_option("--semantics", s_sem, "exact or sort")->check(semantics_check);
  session_cmd->add_option("--log", s_log, "Append session events to this JSON-lines file");

  std::string host = "127.0.0.1", log_dir;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP session service");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port, "0 picks a free port");
  serve_cmd->add_option("--log-dir", log_dir, "Keep per-session event logs here and restore them on start");

  std::string e_strategy, e_out;
  std::optional<std::string> e_sem;
  bool e_dot = false, e_repair = false;
  auto* export_cmd = app.add_subcommand("export", "Write a strategy as JSON or Graphviz DOT");
  export_cmd->add_option("strategy", e_strategy)->required();
  export_cmd->add_flag("--dot", e_dot);
  export_cmd->add_flag("--repair", e_repair, "Export the verified, repaired tree");
  export_cmd->add_option("--semantics", e_sem)->check(semantics_check);
  export_cmd->add_option("-o,--output", e_out);

  std::string i_file, i_name, i_sem = "sort", i_out;
  bool i_no_recover = false;
  auto* import_cmd = app.add_subcommand("import", "Convert a w(...)/f(...) text table to JSON");
  import_cmd->add_option("file", i_file)->required();
  import_cmd->add_option("--name", i_name);
  import_cmd->add_option("--semantics", i_sem)->check(semantics_check);
  import_cmd->add_flag("--no-recover", i_no_recover);
  import_cmd->add_option("-o,--output", i_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*solve_cmd) return cmd_solve(sa, out, err);
    if (*plan_cmd) return cmd_plan(plan_n, plan_sem, plan_json, plan_export, out);
    if (*bounds_cmd) return cmd_bounds(b_from, b_to, b_json, out, err);
    if (*session_cmd) {
      if (s_n.has_value() == s_tree.has_value()) {
        err << "give either n or --tree\n";
        return kExitUsage;
      }
      SessionSpec spec;
      spec.n = s_n;
      spec.tree = s_tree;
      spec.semantics = kSemanticsNames.at(s_sem);
      return cmd_session(spec, s_log, in, out);
    }
    if (*serve_cmd) return cmd_serve(host, port, log_dir, out, err);
    if (*export_cmd) return cmd_export(e_strategy, e_sem, e_dot, e_repair, e_out, out);
    if (*import_cmd) return cmd_import(i_file, i_name, i_sem, i_no_recover, i_out, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EmptyTable& e) {
    err << "empty table: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MalformedTree& e) {
    err << "malformed strategy: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace weighwright::cli
