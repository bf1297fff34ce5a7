#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "weighwright/plan_runner.hpp"

namespace weighwright::cli {

// What a session runs: a composite plan for n coins, or a named/file strategy.
struct SessionSpec {
  std::optional<int> n;
  std::optional<std::string> tree;
  Semantics semantics = Semantics::SortClasses;

  nlohmann::json to_json() const;
  static SessionSpec from_json(const nlohmann::json& j);  // throws std::invalid_argument
};

std::shared_ptr<const CompositePlan> plan_for(const SessionSpec& spec);

class Session {
 public:
  enum class Submit { Accepted, Contradiction, AlreadyFinished };

  Session(std::string id, SessionSpec spec);

  const std::string& id() const { return id_; }
  const SessionSpec& spec() const { return spec_; }
  bool finished() const { return runner_.finished(); }
  const PlanRunner& runner() const { return runner_; }

  Submit submit(Outcome o);

  // {"left": {...}, "right": {...}, "weighing_index": k} or {"done": true, "result": {...}}.
  nlohmann::json next_json() const;
  nlohmann::json state_json() const;

  // Appends every accepted or rejected outcome to `file` (JSON lines).
  void attach_log(const std::filesystem::path& file, bool write_header);

 private:
  void log(const nlohmann::json& event);

  std::string id_;
  SessionSpec spec_;
  PlanRunner runner_;
  std::optional<std::ofstream> log_;
};

nlohmann::json placed_json(const PlacedWeighing& w);
nlohmann::json result_json(const PlanResult& r);

// Sessions by id. Each session accepts one mutation at a time; a second
// concurrent writer is turned away instead of queued.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> log_dir = std::nullopt);

  std::shared_ptr<Session> create(const SessionSpec& spec);
  std::shared_ptr<Session> find(const std::string& id) const;

  struct Guarded {
    std::shared_ptr<Session> session;
    std::unique_lock<std::mutex> lock;  // not owned when busy
  };
  // Empty session pointer: unknown id. Lock not owned: another writer is active.
  Guarded acquire(const std::string& id);
  // Waits for an active writer to finish; used by readers.
  Guarded read(const std::string& id);

  // Rebuilds sessions from the event logs in the log directory.
  std::size_t restore();

 private:
  struct Entry {
    std::shared_ptr<Session> session;
    std::unique_ptr<std::mutex> writer;
  };
  mutable std::mutex mutex_;
  std::map<std::string, Entry> sessions_;
  std::optional<std::filesystem::path> log_dir_;
  std::uint64_t next_id_ = 1;
};

}  // namespace weighwright::cli
