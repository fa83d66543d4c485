#pragma once

// Generators for well-formed random domains, problems and plans.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/pddl/plan.hpp"

namespace lam::testing {

inline std::string fuzz_name(std::mt19937_64& rng, const std::string& prefix, int index) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::string s = prefix + std::to_string(index);
  const int extra = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < extra; ++i) {
    s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  }
  if (std::bernoulli_distribution(0.3)(rng)) s += "-x";
  if (std::bernoulli_distribution(0.2)(rng)) s += "_y";
  return s;
}

inline pddl::Domain random_domain(std::mt19937_64& rng) {
  pddl::Domain d;
  d.name = fuzz_name(rng, "dom", 0);
  std::vector<std::string> all_req = {":strips", ":typing", ":negative-preconditions"};
  for (const auto& r : all_req) {
    if (std::bernoulli_distribution(0.6)(rng)) d.requirements.push_back(r);
  }
  const int n_types = std::uniform_int_distribution<int>(0, 4)(rng);
  std::vector<std::string> type_names = {"object"};
  for (int i = 0; i < n_types; ++i) {
    const std::string parent =
        type_names[std::uniform_int_distribution<std::size_t>(0, type_names.size() - 1)(rng)];
    d.types.push_back({fuzz_name(rng, "t", i), parent});
    type_names.push_back(d.types.back().name);
  }
  auto any_type = [&]() {
    return type_names[std::uniform_int_distribution<std::size_t>(0, type_names.size() - 1)(rng)];
  };
  const int n_preds = std::uniform_int_distribution<int>(0, 5)(rng);
  for (int i = 0; i < n_preds; ++i) {
    pddl::PredicateSchema p{fuzz_name(rng, "p", i), {}};
    const int arity = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < arity; ++k) p.params.push_back({"?v" + std::to_string(k), any_type()});
    d.predicates.push_back(p);
  }
  const int n_actions = d.predicates.empty() ? 0 : std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < n_actions; ++i) {
    pddl::ActionSchema a;
    a.name = fuzz_name(rng, "act", i);
    auto make_atom = [&]() {
      const auto& pred = d.predicates[std::uniform_int_distribution<std::size_t>(
          0, d.predicates.size() - 1)(rng)];
      pddl::Atom atom{pred.name, {}};
      for (const auto& param : pred.params) {
        std::vector<std::string> fits;
        for (const auto& v : a.params) {
          if (d.is_subtype(v.type, param.type)) fits.push_back(v.name);
        }
        if (fits.empty() || std::bernoulli_distribution(0.3)(rng)) {
          a.params.push_back({"?a" + std::to_string(a.params.size()), param.type});
          atom.args.push_back(a.params.back().name);
        } else {
          atom.args.push_back(
              fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)]);
        }
      }
      return atom;
    };
    const int n_pre = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n_pre; ++k) {
      a.precondition.push_back({make_atom(), std::bernoulli_distribution(0.25)(rng)});
    }
    const int n_eff = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n_eff; ++k) {
      auto atom = make_atom();
      const bool del = std::bernoulli_distribution(0.4)(rng);
      auto& into = del ? a.del_effects : a.add_effects;
      const auto& other = del ? a.add_effects : a.del_effects;
      if (std::find(other.begin(), other.end(), atom) == other.end()) into.push_back(atom);
    }
    d.actions.push_back(a);
  }
  return d;
}

inline pddl::Problem random_problem(std::mt19937_64& rng, const pddl::Domain& d) {
  pddl::Problem p;
  p.name = fuzz_name(rng, "prob", 0);
  p.domain_name = d.name;
  std::vector<std::string> type_names = {"object"};
  for (const auto& t : d.types) type_names.push_back(t.name);
  const int n_objects = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int i = 0; i < n_objects; ++i) {
    p.objects.push_back({fuzz_name(rng, "o", i), type_names[std::uniform_int_distribution<std::size_t>(
                                                     0, type_names.size() - 1)(rng)]});
  }
  auto make_atom = [&]() -> std::optional<pddl::Atom> {
    if (d.predicates.empty()) return std::nullopt;
    const auto& pred =
        d.predicates[std::uniform_int_distribution<std::size_t>(0, d.predicates.size() - 1)(rng)];
    pddl::Atom atom{pred.name, {}};
    for (const auto& param : pred.params) {
      std::vector<std::string> fits;
      for (const auto& o : p.objects) {
        if (d.is_subtype(o.type, param.type)) fits.push_back(o.name);
      }
      if (fits.empty()) return std::nullopt;
      atom.args.push_back(fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)]);
    }
    return atom;
  };
  const int n_init = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int i = 0; i < n_init; ++i) {
    if (auto a = make_atom()) p.init.push_back(*a);
  }
  const int n_goal = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < n_goal; ++i) {
    if (auto a = make_atom()) p.goal.push_back({*a, std::bernoulli_distribution(0.25)(rng)});
  }
  return p;
}

inline std::vector<pddl::PlanStep> random_plan_steps(std::mt19937_64& rng) {
  std::vector<pddl::PlanStep> steps;
  const int n = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int i = 0; i < n; ++i) {
    pddl::PlanStep s{fuzz_name(rng, "a", i), {}, {}};
    const int arity = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < arity; ++k) s.args.push_back(fuzz_name(rng, "o", k));
    steps.push_back(s);
  }
  return steps;
}

}  // namespace lam::testing
