// Eigen-bearing headers must precede httplib: it pulls in <resolv.h>, whose
// `_res` macro breaks Eigen's templates.
#include "lam/gateway/server.hpp"
#include "lam/tools/registry.hpp"
#include "lam/world/scene_io.hpp"

#include <sys/socket.h>

#include <atomic>
#include <thread>

#include "httplib.h"

namespace lam::gateway {

using nlohmann::json;
using orchestrator::Session;

struct Gateway::Impl {
  GatewayConfig config;
  tools::ToolDurations durations;
  std::unique_ptr<orchestrator::Orchestrator> orch;
  httplib::Server server;
  std::thread thread;
  std::atomic<bool> stopping{false};
  int port = -1;

  void routes();
  std::shared_ptr<Session> session_or_404(const httplib::Request& req, httplib::Response& res);
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void error(httplib::Response& res, int status, const std::string& message) { reply(res, status, {{"error", message}}); }

bool parse_body(const httplib::Request& req, httplib::Response& res, json* out) {
  if (req.body.empty()) {
    *out = json::object();
    return true;
  }
  try {
    *out = json::parse(req.body);
  } catch (const json::parse_error& e) {
    error(res, 400, std::string("body is not valid JSON: ") + e.what());
    return false;
  }
  if (!out->is_object()) {
    error(res, 400, "body must be a JSON object");
    return false;
  }
  return true;
}

std::string sse(const orchestrator::Event& e, const std::string& session) {
  json data = orchestrator::to_json(e, true);
  data["session"] = session;
  return "id: " + std::to_string(e.seq) + "\nevent: " + e.kind + "\ndata: " + data.dump() + "\n\n";
}

}  // namespace

std::shared_ptr<Session> Gateway::Impl::session_or_404(const httplib::Request& req, httplib::Response& res) {
  auto s = orch->find(req.matches[1]);
  if (!s) error(res, 404, "no session '" + std::string(req.matches[1]) + "'");
  return s;
}

void Gateway::Impl::routes() {
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"status", "ok"}}); });

  server.Get("/tools", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, tools::registry_json(durations));
  });

  server.Get("/world/scene", [this](const httplib::Request& req, httplib::Response& res) {
    if (req.has_param("session")) {
      auto s = orch->find(req.get_param_value("session"));
      if (!s) return error(res, 404, "no such session");
      return reply(res, 200, world::world_to_json(s->world()));
    }
    reply(res, 200, world::world_to_json(orch->world()));
  });

  server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    if (!parse_body(req, res, &body)) return;
    try {
      const auto mode = orchestrator::mode_from_string(body.value("mode", "pddl"));
      const auto spec = translator::TranslatorSpec::parse(body.value("translator", "template"));
      auto s = orch->create(mode, spec);
      reply(res, 201, {{"id", s->id()}, {"mode", orchestrator::to_string(mode)}, {"translator", spec.to_string()}});
    } catch (const orchestrator::StateError& e) {
      error(res, 503, e.what());
    } catch (const std::exception& e) {
      error(res, 400, e.what());
    }
  });

  server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto s = session_or_404(req, res)) reply(res, 200, s->to_json());
  });

  server.Post(R"(/sessions/([^/]+)/transcript)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    json body;
    if (!parse_body(req, res, &body)) return;
    if (!body.contains("line") || !body["line"].is_string()) return error(res, 400, "body needs a string 'line'");
    const auto ev = s->transcript(body["line"].get<std::string>());
    reply(res, 200, {{"event", gate::to_string(ev.kind)}, {"text", ev.text}, {"phase", to_string(s->phase())}});
  });

  server.Post(R"(/sessions/([^/]+)/approve)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    try {
      s->approve();
      reply(res, 200, {{"phase", to_string(s->phase())}});
    } catch (const orchestrator::StateError& e) {
      error(res, 409, e.what());
    }
  });

  server.Post(R"(/sessions/([^/]+)/revise)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    json body;
    if (!parse_body(req, res, &body)) return;
    try {
      const auto r = orchestrator::Revision::from_json(body.contains("revision") ? body["revision"] : body);
      s->revise(r);
      reply(res, 200, {{"phase", to_string(s->phase())}, {"check", s->check().to_json()}});
    } catch (const orchestrator::StateError& e) {
      error(res, 409, e.what());
    } catch (const std::exception& e) {
      error(res, 400, e.what());
    }
  });

  server.Post(R"(/sessions/([^/]+)/stop)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    s->stop();
    reply(res, 202, {{"phase", to_string(s->phase())}});
  });

  server.Post(R"(/sessions/([^/]+)/resume)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    try {
      s->resume();
      reply(res, 200, {{"phase", to_string(s->phase())}});
    } catch (const orchestrator::StateError& e) {
      error(res, 409, e.what());
    }
  });

  server.Get(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = session_or_404(req, res);
    if (!s) return;
    std::uint64_t since = 0;
    try {
      if (req.has_param("since")) {
        since = std::stoull(req.get_param_value("since"));
      } else if (req.has_header("Last-Event-ID")) {
        since = std::stoull(req.get_header_value("Last-Event-ID"));
      }
    } catch (const std::exception&) {
      return error(res, 400, "since must be a sequence number");
    }
    const bool follow = req.get_param_value("follow") != "0";
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, s, since, follow](std::size_t, httplib::DataSink& sink) mutable {
          bool gap = false;
          const auto events = s->events().since(since, &gap);
          std::string chunk;
          if (gap) chunk += "event: gap\ndata: " + json{{"after", since}, {"session", s->id()}}.dump() + "\n\n";
          for (const auto& e : events) {
            chunk += sse(e, s->id());
            since = e.seq;
          }
          if (!chunk.empty()) return sink.write(chunk.data(), chunk.size());
          if (!follow || stopping || s->events().closed()) {
            sink.done();
            return true;
          }
          s->events().wait_beyond(since, std::chrono::milliseconds(200));
          if (!sink.is_writable()) return false;
          if (s->events().last_seq() == since) {
            // Comment line as a keep-alive so dead peers are noticed.
            static const std::string ping = ": ping\n\n";
            return sink.write(ping.data(), ping.size());
          }
          return true;
        });
  });
}

Gateway::Gateway(GatewayConfig config) : impl_(std::make_unique<Impl>()) {
  auto& m = *impl_;
  m.config = std::move(config);
  m.durations = tools::ToolDurations::from_json(m.config.tool_ticks);
  world::WorldState w;
  try {
    w = world::load_scene(m.config.scene).world;
  } catch (const std::exception& e) {
    throw ConfigError("cannot load scene " + m.config.scene + ": " + e.what());
  }
  w.tick_ms = m.config.tick_ms;
  orchestrator::OrchestratorConfig oc;
  oc.env.durations = m.durations;
  oc.env.gate.buffering = m.config.gate_buffering;
  oc.env.auto_approve = m.config.auto_approve;
  oc.realtime = true;
  oc.shared_world = m.config.shared_world;
  m.orch = std::make_unique<orchestrator::Orchestrator>(w, load_resources(m.config.data_dir, m.config.endpoint), oc);

  // Only SO_REUSEADDR: the library default also sets SO_REUSEPORT, which
  // would let a second server share the port silently.
  m.server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  m.routes();
}

Gateway::~Gateway() { stop(); }

void Gateway::bind() {
  auto& m = *impl_;
  if (m.config.port == 0) {
    m.port = m.server.bind_to_any_port(m.config.host);
  } else if (m.server.bind_to_port(m.config.host, m.config.port)) {
    m.port = m.config.port;
  }
  if (m.port <= 0) {
    throw BindError("cannot bind " + m.config.host + ":" + std::to_string(m.config.port) +
                    " (address in use or not permitted)");
  }
}

int Gateway::port() const { return impl_->port; }

void Gateway::run() {
  if (impl_->port <= 0) throw BindError("run() before a successful bind()");
  impl_->server.listen_after_bind();
}

void Gateway::start() {
  bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void Gateway::stop() {
  auto& m = *impl_;
  if (m.stopping.exchange(true)) return;
  m.orch->shutdown();
  m.server.stop();
  if (m.thread.joinable()) m.thread.join();
}

orchestrator::Orchestrator& Gateway::orchestrator() { return *impl_->orch; }

}  // namespace lam::gateway
