#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

namespace lam::orchestrator {

/// One entry of a session's audit trail. Kinds: phase-change, plan-ready,
/// approval, revision, tool-status, gate-event, stop-latency-sample, notice,
/// error.
struct Event {
  std::uint64_t seq = 0;
  std::string kind;
  nlohmann::json payload;
  /// Session clock time of the append.
  double time_ms = 0.0;
};

nlohmann::json to_json(const Event& event, bool timestamps = true);

/// Append-only log with monotonic sequence numbers starting at 1. Readers
/// poll or block on it; appends never wait for readers. Only the newest
/// `capacity` events are retained.
class EventLog {
 public:
  explicit EventLog(std::size_t capacity = 65536) : capacity_(capacity) {}

  std::uint64_t append(std::string kind, nlohmann::json payload, double time_ms);

  /// Retained events with seq > `after`. `gap` is set when events the
  /// reader had not seen were already dropped.
  std::vector<Event> since(std::uint64_t after, bool* gap = nullptr) const;
  std::vector<Event> all() const { return since(0); }
  std::uint64_t last_seq() const;

  /// Blocks until an event newer than `after` exists, the log is closed or
  /// the timeout expires. Returns true if new events are available.
  bool wait_beyond(std::uint64_t after, std::chrono::milliseconds timeout) const;
  void close();
  bool closed() const;

  /// One JSON object per line, in sequence order.
  std::string to_jsonl(bool timestamps = false) const;

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::deque<Event> events_;
  std::uint64_t next_ = 1;
  bool closed_ = false;
};

}  // namespace lam::orchestrator
