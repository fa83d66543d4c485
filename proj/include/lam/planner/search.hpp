#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "lam/pddl/grounding.hpp"
#include "lam/pddl/plan.hpp"
#include "lam/planner/heuristic.hpp"

namespace lam::planner {

enum class Strategy { kGreedyBestFirst, kAStar, kBreadthFirst };

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

struct SearchConfig {
  Strategy strategy = Strategy::kGreedyBestFirst;
  HeuristicKind heuristic = HeuristicKind::kAdditive;
  std::size_t max_expansions = 100'000;
  /// FIFO among equal keys when set; LIFO otherwise.
  bool deterministic_tie_break = true;
};

enum class Outcome { kPlan, kUnsolvable, kResourceLimit };

const char* to_string(Outcome outcome);

struct SearchStatistics {
  std::size_t expansions = 0;
  std::size_t generated = 0;
  std::size_t peak_open = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct SearchResult {
  Outcome outcome = Outcome::kUnsolvable;
  pddl::Plan plan;
  SearchStatistics stats;

  bool solved() const { return outcome == Outcome::kPlan; }
};

/// Forward state-space search over the grounding. Breadth-first, and A* with
/// an admissible heuristic (h-max, zero), return shortest plans. Unsolvable is
/// reported only once every reachable state not pruned by an infinite
/// relaxed estimate has been expanded.
SearchResult solve(const pddl::Grounding& grounding, const SearchConfig& config = {});

/// Throws std::invalid_argument when `max_expansions` is zero.
void check_config(const SearchConfig& config);

}  // namespace lam::planner
