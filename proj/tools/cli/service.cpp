#include "service.hpp"

#include <httplib.h>

#include <stdexcept>

namespace weighwright::cli {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void error(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, {{"error", message}});
}

}  // namespace

struct Service::Impl {
  explicit Impl(Options o) : options(std::move(o)), store(options.log_dir) {}

  Options options;
  SessionStore store;
  httplib::Server server;

  void routes() {
    if (options.allow_cors) {
      server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                  {"Access-Control-Allow-Headers", "Content-Type"},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
      server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      const json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded()) return error(res, 400, "request body is not JSON");
      try {
        const auto session = store.create(SessionSpec::from_json(body));
        json out = session->state_json();
        reply(res, 201, out);
      } catch (const std::invalid_argument& e) {
        error(res, 400, e.what());
      } catch (const std::exception& e) {
        error(res, 422, e.what());
      }
    });

    server.Get(R"(/sessions/([A-Za-z0-9_-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const auto guard = store.read(req.matches[1]);
      if (!guard.session) return error(res, 404, "unknown session");
      reply(res, 200, guard.session->state_json());
    });

    server.Get(R"(/sessions/([A-Za-z0-9_-]+)/next)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto guard = store.read(req.matches[1]);
      if (!guard.session) return error(res, 404, "unknown session");
      reply(res, 200, guard.session->next_json());
    });

    server.Post(R"(/sessions/([A-Za-z0-9_-]+)/outcome)", [this](const httplib::Request& req, httplib::Response& res) {
      auto guard = store.acquire(req.matches[1]);
      if (!guard.session) return error(res, 404, "unknown session");
      if (!guard.lock.owns_lock()) return error(res, 409, "another outcome for this session is being applied");
      const json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("outcome") || !body["outcome"].is_string())
        return error(res, 400, R"(expected {"outcome": "<" | "=" | ">"})");
      const auto o = parse_symbol(body["outcome"].get<std::string>());
      if (!o) return error(res, 400, "outcome must be one of <, =, >");
      switch (guard.session->submit(*o)) {
        case Session::Submit::Accepted:
          return reply(res, 200, guard.session->state_json());
        case Session::Submit::Contradiction: {
          json out = guard.session->state_json();
          out["error"] = "contradictory outcome history";
          return reply(res, 409, out);
        }
        case Session::Submit::AlreadyFinished: {
          json out = guard.session->state_json();
          out["error"] = "session already finished";
          return reply(res, 409, out);
        }
      }
    });
  }

};

Service::Service() : Service(Options{}) {}

Service::Service(Options options) : impl_(std::make_unique<Impl>(std::move(options))) {
  if (impl_->options.log_dir) impl_->store.restore();
  impl_->routes();
}

Service::~Service() { stop(); }

SessionStore& Service::store() { return impl_->store; }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace weighwright::cli
