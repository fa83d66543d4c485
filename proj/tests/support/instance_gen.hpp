#pragma once

// Random tabletop problems with at most five objects, for oracle comparisons.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lam/pddl/ast.hpp"

namespace lam::testing {

inline pddl::Problem random_tabletop_problem(std::mt19937_64& rng, int index) {
  using pddl::Atom;
  std::uniform_int_distribution<int> total_dist(1, 5);
  std::bernoulli_distribution coin(0.5);
  const int total = total_dist(rng);
  const bool with_table = total >= 2 && coin(rng);
  const bool with_container = total - (with_table ? 1 : 0) >= 2 && coin(rng);
  const int n_items = total - (with_table ? 1 : 0) - (with_container ? 1 : 0);

  pddl::Problem p;
  p.name = "gen" + std::to_string(index);
  p.domain_name = "tabletop";
  std::vector<std::string> items;
  for (int i = 0; i < n_items; ++i) {
    items.push_back("b" + std::to_string(i + 1));
    p.objects.push_back({items.back(), "item"});
  }
  if (with_container) p.objects.push_back({"bin", "container"});
  if (with_table) p.objects.push_back({"table", "surface"});

  std::vector<std::string> free_items = items;
  std::shuffle(free_items.begin(), free_items.end(), rng);
  std::vector<std::string> clear_items;
  bool holding = false;
  if (!free_items.empty() && std::bernoulli_distribution(0.2)(rng)) {
    p.init.push_back({"holding", {free_items.back()}});
    free_items.pop_back();
    holding = true;
  }
  if (with_container) {
    std::vector<std::string> rest;
    for (const auto& it : free_items) {
      if (std::bernoulli_distribution(0.15)(rng)) {
        p.init.push_back({"in", {it, "bin"}});
      } else {
        rest.push_back(it);
      }
    }
    free_items = rest;
  }
  // Random towers: each remaining item starts a tower or sits on a tower top.
  std::vector<std::string> tops;
  for (const auto& it : free_items) {
    if (tops.empty() || coin(rng)) {
      p.init.push_back({"on-table", {it}});
      tops.push_back(it);
    } else {
      auto& top = tops[std::uniform_int_distribution<std::size_t>(0, tops.size() - 1)(rng)];
      p.init.push_back({"on", {it, top}});
      top = it;
    }
  }
  for (const auto& t : tops) p.init.push_back({"clear", {t}});
  if (!holding) p.init.push_back({"gripper-empty", {}});

  std::vector<std::string> all;
  for (const auto& o : p.objects) all.push_back(o.name);
  auto pick = [&](const std::vector<std::string>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  const int n_goals = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int k = 0; k < n_goals; ++k) {
    const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
    pddl::Literal lit;
    if (kind <= 3 && items.size() >= 2) {
      std::string a = pick(items);
      std::string b = pick(items);
      lit.atom = {"on", {a, b}};
    } else if (kind == 4) {
      lit.atom = {"on", {pick(all), pick(all)}};
    } else if (kind == 5 && with_container) {
      lit.atom = {"in", {pick(items), "bin"}};
    } else if (kind == 6) {
      lit.atom = {"clear", {pick(items)}};
    } else if (kind == 7) {
      lit.atom = {"holding", {pick(items)}};
    } else if (kind == 8) {
      lit.atom = {"gripper-empty", {}};
    } else {
      lit.atom = {"on-table", {pick(items)}};
    }
    lit.negated = std::bernoulli_distribution(0.15)(rng);
    if (std::find(p.goal.begin(), p.goal.end(), lit) == p.goal.end()) p.goal.push_back(lit);
  }
  return p;
}

}  // namespace lam::testing
