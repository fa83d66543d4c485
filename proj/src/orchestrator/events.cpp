#include "lam/orchestrator/events.hpp"

namespace lam::orchestrator {

nlohmann::json to_json(const Event& event, bool timestamps) {
  nlohmann::json j = {{"seq", event.seq}, {"kind", event.kind}, {"payload", event.payload}};
  if (timestamps) j["time_ms"] = event.time_ms;
  return j;
}

std::uint64_t EventLog::append(std::string kind, nlohmann::json payload, double time_ms) {
  std::uint64_t seq;
  {
    std::lock_guard lock(mutex_);
    seq = next_++;
    events_.push_back(Event{seq, std::move(kind), std::move(payload), time_ms});
    while (events_.size() > capacity_) events_.pop_front();
  }
  cv_.notify_all();
  return seq;
}

std::vector<Event> EventLog::since(std::uint64_t after, bool* gap) const {
  std::lock_guard lock(mutex_);
  std::vector<Event> out;
  if (gap) *gap = !events_.empty() && events_.front().seq > after + 1;
  for (const auto& e : events_) {
    if (e.seq > after) out.push_back(e);
  }
  return out;
}

std::uint64_t EventLog::last_seq() const {
  std::lock_guard lock(mutex_);
  return next_ - 1;
}

bool EventLog::wait_beyond(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || next_ - 1 > after; });
  return next_ - 1 > after;
}

void EventLog::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool EventLog::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

std::string EventLog::to_jsonl(bool timestamps) const {
  std::string out;
  for (const auto& e : all()) out += to_json(e, timestamps).dump() + "\n";
  return out;
}

}  // namespace lam::orchestrator
