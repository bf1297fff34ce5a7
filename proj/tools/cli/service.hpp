#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "session.hpp"

namespace weighwright::cli {

// HTTP front end over a SessionStore:
//   POST /sessions                 {"n": 11, "semantics": "sort"} or {"tree": "alg1"} -> {"id": ...}
//   GET  /sessions/{id}            full state and history
//   GET  /sessions/{id}/next       next weighing, or {"done": true, "result": ...}
//   POST /sessions/{id}/outcome    {"outcome": "<" | "=" | ">"} -> state; 409 on contradiction
class Service {
 public:
  struct Options {
    std::optional<std::filesystem::path> log_dir;
    bool allow_cors = true;
  };

  Service();
  explicit Service(Options options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  SessionStore& store();

  // Returns the bound port (an ephemeral one when port is 0), or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace weighwright::cli
