#pragma once

#include <chrono>

namespace lam::orchestrator {

/// Time source of an execution loop, in milliseconds since construction.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now_ms() const = 0;
  /// Blocks (or jumps) until the next tick boundary `tick_ms` after the
  /// previous one.
  virtual void wait_tick(double tick_ms) = 0;
  /// Makes the current instant a tick boundary. Called when execution
  /// (re)starts after an idle period.
  virtual void sync() {}
};

/// Deterministic time that moves only when the loop ticks.
class VirtualClock : public Clock {
 public:
  double now_ms() const override { return now_; }
  void wait_tick(double tick_ms) override { now_ += tick_ms; }
  void advance(double ms) { now_ += ms; }

 private:
  double now_ = 0.0;
};

/// Wall-clock ticks on absolute boundaries, so processing time does not
/// accumulate drift.
class RealClock : public Clock {
 public:
  RealClock() : start_(std::chrono::steady_clock::now()), next_(start_) {}
  double now_ms() const override {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }
  void wait_tick(double tick_ms) override;
  void sync() override { next_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point next_;
};

}  // namespace lam::orchestrator
