#include "lam/planner/search.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace lam::planner {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kGreedyBestFirst: return "gbfs";
    case Strategy::kAStar: return "astar";
    case Strategy::kBreadthFirst: return "bfs";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "gbfs" || name == "greedy" || name == "greedy-best-first") {
    return Strategy::kGreedyBestFirst;
  }
  if (name == "astar" || name == "a-star" || name == "a*") return Strategy::kAStar;
  if (name == "bfs" || name == "breadth-first") return Strategy::kBreadthFirst;
  throw std::invalid_argument("unknown search strategy '" + name + "'");
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPlan: return "plan";
    case Outcome::kUnsolvable: return "unsolvable";
    case Outcome::kResourceLimit: return "resource-limit";
  }
  return "?";
}

void check_config(const SearchConfig& config) {
  if (config.max_expansions == 0) throw std::invalid_argument("max_expansions must be positive");
}

namespace {

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

struct Node {
  pddl::SymbolicState state;
  std::size_t parent;
  std::size_t action;
  std::size_t depth;
};

class Search {
 public:
  Search(const pddl::Grounding& g, const SearchConfig& cfg)
      : g_(g), cfg_(cfg), heuristic_(g, cfg.strategy == Strategy::kBreadthFirst
                                            ? HeuristicKind::kZero
                                            : cfg.heuristic) {}

  SearchResult run() {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result = dispatch();
    result.stats = stats_;
    result.stats.elapsed = std::chrono::steady_clock::now() - start;
    return result;
  }

 private:
  SearchResult dispatch() {
    nodes_.push_back({g_.initial, kNoParent, 0, 0});
    seen_.emplace(g_.initial, 0);
    if (g_.is_goal(g_.initial)) return found(0);
    if (heuristic_(g_.initial) == kInfinity) return {Outcome::kUnsolvable, {}, {}};
    return cfg_.strategy == Strategy::kBreadthFirst ? breadth_first() : best_first();
  }

  SearchResult breadth_first() {
    std::deque<std::size_t> open{0};
    while (!open.empty()) {
      if (stats_.expansions >= cfg_.max_expansions) return {Outcome::kResourceLimit, {}, {}};
      std::size_t current;
      if (cfg_.deterministic_tie_break) {
        current = open.front();
        open.pop_front();
      } else {
        current = open.back();
        open.pop_back();
      }
      ++stats_.expansions;
      for (std::size_t a = 0; a < g_.actions.size(); ++a) {
        const auto& action = g_.actions[a];
        if (!action.applicable(nodes_[current].state)) continue;
        auto next = action.apply(nodes_[current].state);
        ++stats_.generated;
        if (seen_.count(next)) continue;
        const std::size_t id = nodes_.size();
        seen_.emplace(next, id);
        nodes_.push_back({std::move(next), current, a, nodes_[current].depth + 1});
        if (g_.is_goal(nodes_[id].state)) return found(id);
        open.push_back(id);
        stats_.peak_open = std::max(stats_.peak_open, open.size());
      }
    }
    return {Outcome::kUnsolvable, {}, {}};
  }

  // Key: (primary, secondary, order). Greedy uses (h, 0, order); A* uses
  // (g + h, h, order).
  using Key = std::tuple<double, double, long long, std::size_t>;

  SearchResult best_first() {
    const bool astar = cfg_.strategy == Strategy::kAStar;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> open;
    std::vector<double> h_cache;
    long long order = 0;
    auto push = [&](std::size_t id, double h) {
      const long long tick = cfg_.deterministic_tie_break ? order++ : -(order++);
      const double depth = static_cast<double>(nodes_[id].depth);
      open.emplace(astar ? depth + h : h, astar ? h : 0.0, tick, id);
      stats_.peak_open = std::max(stats_.peak_open, open.size());
    };
    const double h0 = heuristic_(g_.initial);
    push(0, h0);
    std::vector<bool> expanded{false};
    while (!open.empty()) {
      const auto [f, h, tick, current] = open.top();
      open.pop();
      if (expanded[current]) continue;
      if (astar && static_cast<double>(nodes_[current].depth) + h != f) continue;  // stale
      if (g_.is_goal(nodes_[current].state)) return found(current);
      if (stats_.expansions >= cfg_.max_expansions) return {Outcome::kResourceLimit, {}, {}};
      expanded[current] = true;
      ++stats_.expansions;
      for (std::size_t a = 0; a < g_.actions.size(); ++a) {
        const auto& action = g_.actions[a];
        if (!action.applicable(nodes_[current].state)) continue;
        auto next = action.apply(nodes_[current].state);
        ++stats_.generated;
        const std::size_t depth = nodes_[current].depth + 1;
        auto it = seen_.find(next);
        if (it != seen_.end()) {
          Node& known = nodes_[it->second];
          // Reopen on a cheaper path; required for optimality under A*.
          if (!astar || depth >= known.depth) continue;
          known.parent = current;
          known.action = a;
          known.depth = depth;
          expanded[it->second] = false;
          push(it->second, heuristic_(known.state));
          continue;
        }
        const double hn = heuristic_(next);
        if (hn == kInfinity) continue;
        const std::size_t id = nodes_.size();
        seen_.emplace(next, id);
        nodes_.push_back({std::move(next), current, a, depth});
        expanded.push_back(false);
        push(id, hn);
      }
    }
    return {Outcome::kUnsolvable, {}, {}};
  }

  SearchResult found(std::size_t id) {
    SearchResult result;
    result.outcome = Outcome::kPlan;
    std::vector<pddl::PlanStep> reversed;
    for (std::size_t n = id; nodes_[n].parent != kNoParent; n = nodes_[n].parent) {
      const auto& action = g_.actions[nodes_[n].action];
      reversed.push_back({action.schema, action.args, {}});
    }
    result.plan.steps.assign(reversed.rbegin(), reversed.rend());
    result.plan.provenance = pddl::Provenance::kNeuroSymbolic;
    return result;
  }

  const pddl::Grounding& g_;
  const SearchConfig& cfg_;
  RelaxedHeuristic heuristic_;
  std::vector<Node> nodes_;
  std::unordered_map<pddl::SymbolicState, std::size_t, pddl::SymbolicStateHash> seen_;
  SearchStatistics stats_;
};

}  // namespace

SearchResult solve(const pddl::Grounding& grounding, const SearchConfig& config) {
  check_config(config);
  return Search(grounding, config).run();
}

}  // namespace lam::planner
