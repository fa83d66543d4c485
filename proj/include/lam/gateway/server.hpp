#pragma once

#include <memory>
#include <stdexcept>

#include "lam/gateway/config.hpp"

namespace lam::gateway {

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTTP front end over an Orchestrator running real-time sessions.
///
///   POST /sessions                    {mode, translator} -> {id}
///   POST /sessions/{id}/transcript    {line}
///   GET  /sessions/{id}
///   POST /sessions/{id}/approve | /revise {revision} | /stop | /resume
///   GET  /sessions/{id}/events        server-sent events, ?since=N or Last-Event-ID
///   GET  /world/scene | /tools | /health
class Gateway {
 public:
  /// Throws ConfigError when the scene or data files cannot be loaded.
  explicit Gateway(GatewayConfig config);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Binds the listening socket. Port 0 picks a free port. Throws BindError.
  void bind();
  /// Bound port.
  int port() const;
  /// Serves until stop(). bind() must have succeeded.
  void run();
  /// bind() plus run() on a background thread.
  void start();
  /// Halts every executing session, ends open event streams and stops the
  /// listener. Idempotent.
  void stop();

  orchestrator::Orchestrator& orchestrator();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lam::gateway
