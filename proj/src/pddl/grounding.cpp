#include "lam/pddl/grounding.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace lam::pddl {

SymbolicState::SymbolicState(std::size_t num_atoms)
    : num_atoms_(num_atoms), words_((num_atoms + 63) / 64, 0) {}

std::size_t SymbolicState::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<AtomId> SymbolicState::atoms() const {
  std::vector<AtomId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int bit = std::countr_zero(bits);
      out.push_back(static_cast<AtomId>(w * 64 + static_cast<std::size_t>(bit)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t SymbolicState::hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::string GroundAction::name() const {
  std::string out = "(" + schema;
  for (const auto& a : args) out += " " + a;
  return out + ")";
}

bool GroundAction::applicable(const SymbolicState& s) const {
  for (AtomId a : pre_pos) {
    if (!s.contains(a)) return false;
  }
  for (AtomId a : pre_neg) {
    if (s.contains(a)) return false;
  }
  return true;
}

SymbolicState GroundAction::apply(const SymbolicState& s) const {
  SymbolicState next = s;
  for (AtomId a : del) next.erase(a);
  for (AtomId a : add) next.insert(a);
  return next;
}

namespace {

std::string action_key(const std::string& schema, const std::vector<std::string>& args) {
  std::string key = schema;
  for (const auto& a : args) key += " " + a;
  return key;
}

/// Calls `visit` with every tuple drawn from `domains`, last position varying fastest.
template <typename Visit>
void for_each_tuple(const std::vector<std::vector<std::string>>& domains, Visit&& visit) {
  for (const auto& d : domains) {
    if (d.empty()) return;
  }
  std::vector<std::size_t> idx(domains.size(), 0);
  std::vector<std::string> tuple(domains.size());
  while (true) {
    for (std::size_t i = 0; i < domains.size(); ++i) tuple[i] = domains[i][idx[i]];
    visit(tuple);
    std::size_t pos = domains.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < domains[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (domains.empty()) return;
  }
}

std::vector<std::vector<std::string>> candidates(
    const Domain& domain, const std::vector<TypedName>& params,
    const std::vector<TypedName>& sorted_objects) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : params) {
    std::vector<std::string> names;
    for (const auto& o : sorted_objects) {
      if (domain.is_subtype(o.type, p.type)) names.push_back(o.name);
    }
    out.push_back(std::move(names));
  }
  return out;
}

Atom substitute(const Atom& schema_atom, const std::vector<TypedName>& params,
                const std::vector<std::string>& binding) {
  Atom out{schema_atom.predicate, {}};
  for (const auto& arg : schema_atom.args) {
    auto it = std::find_if(params.begin(), params.end(),
                           [&](const TypedName& p) { return p.name == arg; });
    out.args.push_back(it == params.end() ? arg : binding[static_cast<std::size_t>(it - params.begin())]);
  }
  return out;
}

}  // namespace

std::optional<AtomId> Grounding::find_atom(const Atom& atom) const {
  auto it = atom_index.find(atom.to_string());
  if (it == atom_index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Grounding::find_action(const std::string& schema,
                                                  const std::vector<std::string>& args) const {
  auto it = action_index.find(action_key(schema, args));
  if (it == action_index.end()) return std::nullopt;
  return it->second;
}

bool Grounding::is_goal(const SymbolicState& s) const {
  for (AtomId a : goal_pos) {
    if (!s.contains(a)) return false;
  }
  for (AtomId a : goal_neg) {
    if (s.contains(a)) return false;
  }
  return true;
}

SymbolicState Grounding::make_state(const std::vector<Atom>& facts) const {
  SymbolicState s(atoms.size());
  for (const auto& f : facts) {
    auto id = find_atom(f);
    if (!id) throw std::invalid_argument("atom " + f.to_string() + " is not in the atom table");
    s.insert(*id);
  }
  return s;
}

std::vector<Atom> Grounding::decode(const SymbolicState& s) const {
  std::vector<Atom> out;
  for (AtomId id : s.atoms()) out.push_back(atoms[id]);
  return out;
}

Grounding ground(const Domain& domain, const Problem& problem, const GroundingOptions& options) {
  std::vector<TypedName> objects = problem.objects;
  std::sort(objects.begin(), objects.end(),
            [](const TypedName& a, const TypedName& b) { return a.name < b.name; });

  Grounding g;
  for (const auto& pred : domain.predicates) {
    for_each_tuple(candidates(domain, pred.params, objects),
                   [&](const std::vector<std::string>& t) { g.atoms.push_back({pred.name, t}); });
  }
  std::sort(g.atoms.begin(), g.atoms.end());
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    g.atom_index.emplace(g.atoms[i].to_string(), static_cast<AtomId>(i));
  }

  std::size_t total = 0;
  std::vector<std::vector<std::vector<std::string>>> per_schema;
  for (const auto& schema : domain.actions) {
    auto c = candidates(domain, schema.params, objects);
    std::size_t n = 1;
    for (const auto& d : c) {
      n *= d.size();
      if (n > options.max_actions) break;
    }
    total += n;
    if (total > options.max_actions) {
      throw GroundingLimitExceeded("grounding would exceed " + std::to_string(options.max_actions) +
                                   " ground actions");
    }
    per_schema.push_back(std::move(c));
  }

  auto ids = [&](const std::vector<Atom>& schema_atoms, const ActionSchema& schema,
                 const std::vector<std::string>& binding) {
    std::vector<AtomId> out;
    for (const auto& a : schema_atoms) {
      out.push_back(*g.find_atom(substitute(a, schema.params, binding)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  g.actions.reserve(total);
  for (std::size_t k = 0; k < domain.actions.size(); ++k) {
    const ActionSchema& schema = domain.actions[k];
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    for (const auto& lit : schema.precondition) (lit.negated ? neg : pos).push_back(lit.atom);
    for_each_tuple(per_schema[k], [&](const std::vector<std::string>& binding) {
      GroundAction ga;
      ga.schema = schema.name;
      ga.args = binding;
      ga.pre_pos = ids(pos, schema, binding);
      ga.pre_neg = ids(neg, schema, binding);
      ga.add = ids(schema.add_effects, schema, binding);
      ga.del = ids(schema.del_effects, schema, binding);
      // Distinct variables bound to the same object can make an atom both
      // added and deleted; the add wins.
      std::erase_if(ga.del, [&](AtomId a) {
        return std::binary_search(ga.add.begin(), ga.add.end(), a);
      });
      g.action_index.emplace(action_key(ga.schema, ga.args), g.actions.size());
      g.actions.push_back(std::move(ga));
    });
  }

  g.initial = SymbolicState(g.atoms.size());
  for (const auto& atom : problem.init) g.initial.insert(*g.find_atom(atom));
  for (const auto& lit : problem.goal) {
    const AtomId id = *g.find_atom(lit.atom);
    (lit.negated ? g.goal_neg : g.goal_pos).push_back(id);
  }
  std::sort(g.goal_pos.begin(), g.goal_pos.end());
  g.goal_pos.erase(std::unique(g.goal_pos.begin(), g.goal_pos.end()), g.goal_pos.end());
  std::sort(g.goal_neg.begin(), g.goal_neg.end());
  g.goal_neg.erase(std::unique(g.goal_neg.begin(), g.goal_neg.end()), g.goal_neg.end());
  return g;
}

}  // namespace lam::pddl
