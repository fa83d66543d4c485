#pragma once

// Test-only reference semantics for the STRIPS subset. Works directly on the
// lifted Domain/Problem with ordered sets of atoms and its own substitution
// and type walk; it shares nothing with the grounding or the search code.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/pddl/plan.hpp"

namespace lam::testing {

using AtomSet = std::set<pddl::Atom>;

inline bool oracle_is_a(const pddl::Domain& d, std::string type, const std::string& ancestor) {
  if (ancestor == "object") return true;
  for (int guard = 0; guard < 64; ++guard) {
    if (type == ancestor) return true;
    if (type == "object") return false;
    std::string parent = "object";
    for (const auto& t : d.types) {
      if (t.name == type) parent = t.parent;
    }
    type = parent;
  }
  return false;
}

struct OracleAction {
  std::string name;
  std::vector<std::string> args;
  AtomSet pre_pos, pre_neg, add, del;
};

inline pddl::Atom oracle_bind(const pddl::Atom& a, const std::map<std::string, std::string>& sub) {
  pddl::Atom out{a.predicate, {}};
  for (const auto& arg : a.args) {
    auto it = sub.find(arg);
    out.args.push_back(it == sub.end() ? arg : it->second);
  }
  return out;
}

inline std::vector<OracleAction> oracle_instantiate(const pddl::Domain& d, const pddl::Problem& p) {
  std::vector<OracleAction> out;
  for (const auto& schema : d.actions) {
    std::vector<std::vector<std::string>> choices;
    for (const auto& param : schema.params) {
      std::vector<std::string> c;
      for (const auto& o : p.objects) {
        if (oracle_is_a(d, o.type, param.type)) c.push_back(o.name);
      }
      choices.push_back(c);
    }
    std::vector<std::string> current;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == choices.size()) {
        std::map<std::string, std::string> sub;
        for (std::size_t k = 0; k < current.size(); ++k) sub[schema.params[k].name] = current[k];
        OracleAction act{schema.name, current, {}, {}, {}, {}};
        for (const auto& lit : schema.precondition) {
          (lit.negated ? act.pre_neg : act.pre_pos).insert(oracle_bind(lit.atom, sub));
        }
        for (const auto& a : schema.add_effects) act.add.insert(oracle_bind(a, sub));
        for (const auto& a : schema.del_effects) act.del.insert(oracle_bind(a, sub));
        out.push_back(act);
        return;
      }
      for (const auto& c : choices[i]) {
        current.push_back(c);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

inline bool oracle_applicable(const OracleAction& a, const AtomSet& s) {
  for (const auto& x : a.pre_pos) {
    if (!s.count(x)) return false;
  }
  for (const auto& x : a.pre_neg) {
    if (s.count(x)) return false;
  }
  return true;
}

inline AtomSet oracle_apply(const OracleAction& a, AtomSet s) {
  for (const auto& x : a.del) s.erase(x);
  for (const auto& x : a.add) s.insert(x);
  return s;
}

inline bool oracle_goal(const pddl::Problem& p, const AtomSet& s) {
  for (const auto& lit : p.goal) {
    if (static_cast<bool>(s.count(lit.atom)) == lit.negated) return false;
  }
  return true;
}

/// Length of a shortest plan, or nullopt when the goal is unreachable.
inline std::optional<std::size_t> oracle_bfs(const pddl::Domain& d, const pddl::Problem& p) {
  const auto actions = oracle_instantiate(d, p);
  AtomSet init(p.init.begin(), p.init.end());
  std::set<AtomSet> seen{init};
  std::deque<std::pair<AtomSet, std::size_t>> queue{{init, 0}};
  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    if (oracle_goal(p, s)) return depth;
    for (const auto& a : actions) {
      if (!oracle_applicable(a, s)) continue;
      auto next = oracle_apply(a, s);
      if (seen.insert(next).second) queue.emplace_back(std::move(next), depth + 1);
    }
  }
  return std::nullopt;
}

struct OracleVerdict {
  bool valid;
  std::size_t step;
};

/// Direct set-manipulation interpreter for plan validity.
inline OracleVerdict oracle_validate(const pddl::Domain& d, const pddl::Problem& p,
                                     const std::vector<pddl::PlanStep>& steps) {
  const auto actions = oracle_instantiate(d, p);
  AtomSet s(p.init.begin(), p.init.end());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const OracleAction* found = nullptr;
    for (const auto& a : actions) {
      if (a.name == steps[i].action && a.args == steps[i].args) found = &a;
    }
    if (found == nullptr || !oracle_applicable(*found, s)) return {false, i};
    s = oracle_apply(*found, s);
  }
  if (!oracle_goal(p, s)) return {false, steps.size()};
  return {true, 0};
}

}  // namespace lam::testing
