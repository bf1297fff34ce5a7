#include "session.hpp"

#include <stdexcept>

#include "strategy_source.hpp"

namespace weighwright::cli {

using nlohmann::json;

json SessionSpec::to_json() const {
  json j{{"semantics", weighwright::to_string(semantics)}};
  if (n) j["n"] = *n;
  if (tree) j["tree"] = *tree;
  return j;
}

SessionSpec SessionSpec::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("session request must be a JSON object");
  SessionSpec s;
  if (j.contains("semantics")) {
    const auto sem = parse_semantics(j.at("semantics").get<std::string>());
    if (!sem) throw std::invalid_argument("semantics must be \"exact\" or \"sort\"");
    s.semantics = *sem;
  }
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer()) throw std::invalid_argument("n must be an integer");
    s.n = j.at("n").get<int>();
    if (*s.n < 1 || *s.n > 100000) throw std::invalid_argument("n must be between 1 and 100000");
  }
  if (j.contains("tree")) s.tree = j.at("tree").get<std::string>();
  if (s.n.has_value() == s.tree.has_value()) throw std::invalid_argument("give exactly one of n and tree");
  return s;
}

std::shared_ptr<const CompositePlan> plan_for(const SessionSpec& spec) {
  if (spec.n) return std::make_shared<const CompositePlan>(plan(*spec.n, spec.semantics));
  const StrategyTable table = load_strategy(*spec.tree);
  PreparedTree prepared = prepare_tree(table, spec.semantics, true);
  const auto& report = prepared.repaired ? *prepared.repaired : prepared.raw;
  if (!report.ok()) throw std::invalid_argument("strategy " + *spec.tree + " does not verify");
  return std::make_shared<const CompositePlan>(
      plan_from_tree(std::make_shared<const DecisionTree>(std::move(prepared.tree)), spec.semantics, *spec.tree));
}

Session::Session(std::string id, SessionSpec spec) : id_(std::move(id)), spec_(std::move(spec)), runner_(plan_for(spec_)) {}

Session::Submit Session::submit(Outcome o) {
  if (runner_.finished()) return Submit::AlreadyFinished;
  if (!runner_.submit(o)) {
    log({{"event", "rejected"}, {"outcome", std::string(1, symbol(o))}});
    return Submit::Contradiction;
  }
  log({{"event", "outcome"}, {"outcome", std::string(1, symbol(o))}});
  return Submit::Accepted;
}

json placed_json(const PlacedWeighing& w) {
  return {{"left", {{"coins", w.left}, {"refs", w.left_refs}}},
          {"right", {{"coins", w.right}, {"refs", w.right_refs}}},
          {"comparison", w.comparison},
          {"text", w.describe()}};
}

json result_json(const PlanResult& r) {
  return {{"uniform", r.uniform}, {"fakes", r.fakes}, {"text", r.describe()}};
}

json Session::next_json() const {
  if (runner_.finished()) return {{"done", true}, {"result", result_json(runner_.result())}};
  json j = placed_json(runner_.next());
  j["done"] = false;
  j["weighing_index"] = runner_.weighings_used() + 1;
  return j;
}

json Session::state_json() const {
  json history = json::array();
  for (const auto& step : runner_.history()) {
    json h = placed_json(step.weighing);
    h["outcome"] = std::string(1, symbol(step.outcome));
    history.push_back(std::move(h));
  }
  json j{{"id", id_},
         {"spec", spec_.to_json()},
         {"n", runner_.plan().n},
         {"total_weighings", runner_.plan().total_weighings},
         {"status", runner_.finished() ? "finished" : "awaiting-outcome"},
         {"history", std::move(history)}};
  if (runner_.finished()) j["result"] = result_json(runner_.result());
  else j["next"] = next_json();
  return j;
}

void Session::attach_log(const std::filesystem::path& file, bool write_header) {
  log_.emplace(file, std::ios::app);
  if (!*log_) throw std::runtime_error("cannot write session log " + file.string());
  if (write_header) log({{"event", "created"}, {"id", id_}, {"spec", spec_.to_json()}});
}

void Session::log(const json& event) {
  if (!log_) return;
  *log_ << event.dump() << '\n';
  log_->flush();
}

SessionStore::SessionStore(std::optional<std::filesystem::path> log_dir) : log_dir_(std::move(log_dir)) {
  if (log_dir_) std::filesystem::create_directories(*log_dir_);
}

std::shared_ptr<Session> SessionStore::create(const SessionSpec& spec) {
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do {
      id = "s" + std::to_string(next_id_++);
    } while (sessions_.count(id));
  }
  auto session = std::make_shared<Session>(id, spec);
  if (log_dir_) session->attach_log(*log_dir_ / (id + ".jsonl"), true);
  std::lock_guard lock(mutex_);
  sessions_.emplace(id, Entry{session, std::make_unique<std::mutex>()});
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second.session;
}

SessionStore::Guarded SessionStore::acquire(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return {};
  return {it->second.session, std::unique_lock<std::mutex>(*it->second.writer, std::try_to_lock)};
}

SessionStore::Guarded SessionStore::read(const std::string& id) {
  std::mutex* writer = nullptr;
  std::shared_ptr<Session> session;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return {};
    session = it->second.session;
    writer = it->second.writer.get();
  }
  return {session, std::unique_lock<std::mutex>(*writer)};
}

std::size_t SessionStore::restore() {
  if (!log_dir_) return 0;
  std::size_t restored = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*log_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path());
    std::string line;
    std::shared_ptr<Session> session;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json e = json::parse(line, nullptr, false);
      if (e.is_discarded()) break;  // torn final write
      const std::string kind = e.value("event", "");
      if (kind == "created") {
        session = std::make_shared<Session>(e.at("id").get<std::string>(), SessionSpec::from_json(e.at("spec")));
      } else if (kind == "outcome" && session) {
        const auto o = parse_symbol(e.at("outcome").get<std::string>());
        if (!o || session->submit(*o) != Session::Submit::Accepted) break;
      }
    }
    if (!session) continue;
    session->attach_log(entry.path(), false);
    std::lock_guard lock(mutex_);
    const std::string id = session->id();
    if (id.size() > 1 && id[0] == 's') {
      try {
        next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
    sessions_.insert_or_assign(id, Entry{session, std::make_unique<std::mutex>()});
    ++restored;
  }
  return restored;
}

}  // namespace weighwright::cli
