#include "lam/orchestrator/clock.hpp"

#include <thread>

namespace lam::orchestrator {

void RealClock::wait_tick(double tick_ms) {
  const auto step = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double, std::milli>(tick_ms));
  next_ += step;
  const auto now = std::chrono::steady_clock::now();
  // After a long stall, resynchronise instead of bursting through missed ticks.
  if (next_ < now) next_ = now;
  std::this_thread::sleep_until(next_);
}

}  // namespace lam::orchestrator
