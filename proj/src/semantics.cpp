#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "mimc/semantics.hpp"
#include "mimc/syntax.hpp"

namespace mimc {

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

namespace {

std::pair<NamePtr, NamePtr> sorted_pair(const NamePtr& a, const NamePtr& b) {
  NamePtr x = canonical_name(a);
  NamePtr y = canonical_name(b);
  if (compare(y, x) < 0) std::swap(x, y);
  return {x, y};
}

}  // namespace

Action action_ncbond(const NamePtr& a, const NamePtr& b) {
  auto [x, y] = sorted_pair(a, b);
  return Action{Action::Kind::NcBond, x, y, {}, {}};
}

Action action_ncunbond(const NamePtr& a, const NamePtr& b) {
  auto [x, y] = sorted_pair(a, b);
  return Action{Action::Kind::NcUnbond, x, y, {}, {}};
}

Action action_conversion(const NamePtr& reactant, NameSet products) {
  return Action{Action::Kind::Conversion, canonical_name(reactant), nullptr, std::move(products), {}};
}

Action action_production(const NamePtr& producer, NameSet products) {
  return Action{Action::Kind::Production, canonical_name(producer), nullptr, std::move(products), {}};
}

Action action_covbond(const NamePtr& a, const NamePtr& b) {
  auto [x, y] = sorted_pair(a, b);
  return Action{Action::Kind::CovBond, x, y, {}, {}};
}

Action action_cleave_bond(const NamePtr& cleaver, const NamePtr& bond) {
  return Action{Action::Kind::CleaveBond, canonical_name(cleaver), canonical_name(bond), {}, {}};
}

Action action_modification(const std::string& modtype, const NamePtr& target) {
  return Action{Action::Kind::Modification, canonical_name(target), nullptr, {}, modtype};
}

Action action_cleave_mod(const NamePtr& cleaver, const NamePtr& mod) {
  return Action{Action::Kind::CleaveMod, canonical_name(cleaver), canonical_name(mod), {}, {}};
}

int compare(const Action& a, const Action& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  auto cmp_ptr = [](const NamePtr& x, const NamePtr& y) {
    if (!x && !y) return 0;
    if (!x) return -1;
    if (!y) return 1;
    return compare(x, y);
  };
  if (int c = cmp_ptr(a.subject, b.subject)) return c;
  if (int c = cmp_ptr(a.object, b.object)) return c;
  if (int c = compare(a.products, b.products)) return c;
  return a.modtype.compare(b.modtype);
}

// ---------------------------------------------------------------------------
// Rule instances
// ---------------------------------------------------------------------------

namespace {

Process without(const std::vector<SpeciesPtr>& mols, std::size_t i, std::size_t j = SIZE_MAX) {
  Process out;
  out.molecules.reserve(mols.size());
  for (std::size_t k = 0; k < mols.size(); ++k)
    if (k != i && k != j) out.molecules.push_back(mols[k]);
  return out;
}

void append(Process& p, const Process& extra) {
  p.molecules.insert(p.molecules.end(), extra.molecules.begin(), extra.molecules.end());
}

}  // namespace

std::vector<GatedTransition> local_redexes(const Process& p) {
  const auto& mols = p.molecules;
  const std::size_t n = mols.size();
  std::vector<NamePtr> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = strip_species(mols[i]);

  std::vector<GatedTransition> out;

  for (std::size_t i = 0; i < n; ++i) {
    // dissociation of a non-covalent compound needs no capability
    if (mols[i]->body->kind == InnerSpecies::Kind::NonCovalent) {
      Process target = without(mols, i);
      target.molecules.push_back(mols[i]->body->left);
      target.molecules.push_back(mols[i]->body->right);
      out.push_back(GatedTransition{{},
                                    {},
                                    action_ncunbond(strip_species(mols[i]->body->left),
                                                    strip_species(mols[i]->body->right)),
                                    canonicalize(target),
                                    {i}});
    }

    for (const auto& g : head_summands(mols[i]->caps)) {
      if (const auto* bind = std::get_if<NonCovBind>(&g.op)) {
        if (g.inhibitors.contains(names[i])) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || !name_equal(names[j], bind->partner)) continue;
          if (g.inhibitors.contains(names[j])) continue;
          Process target = without(mols, i, j);
          target.molecules.push_back(make_species(bind->cont, inner_noncov(mols[i], mols[j])));
          out.push_back(GatedTransition{g.promoters, g.inhibitors, action_ncbond(names[i], names[j]),
                                        canonicalize(target), {i, j}});
        }
      } else if (const auto* cbind = std::get_if<CovBind>(&g.op)) {
        if (g.inhibitors.contains(names[i])) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || !name_equal(names[j], cbind->partner)) continue;
          if (g.inhibitors.contains(names[j])) continue;
          Process target = without(mols, i, j);
          target.molecules.push_back(make_species(cbind->cont, inner_bond(mols[i], mols[j])));
          out.push_back(GatedTransition{g.promoters, g.inhibitors, action_covbond(names[i], names[j]),
                                        canonicalize(target), {i, j}});
        }
      } else if (const auto* mod = std::get_if<CovMod>(&g.op)) {
        if (g.inhibitors.contains(names[i])) continue;
        Process target = without(mols, i);
        target.molecules.push_back(make_species(mod->cont, inner_mod(mod->modtype, mols[i])));
        out.push_back(GatedTransition{g.promoters, g.inhibitors, action_modification(mod->modtype, names[i]),
                                      canonicalize(target), {i}});
      } else if (const auto* cleave = std::get_if<Cleave>(&g.op)) {
        if (g.inhibitors.contains(names[i]) || g.inhibitors.contains(cleave->target)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || !name_equal(names[j], cleave->target)) continue;
          Process target = without(mols, j);
          Action action;
          if (mols[j]->body->kind == InnerSpecies::Kind::CovalentBond) {
            target.molecules.push_back(mols[j]->body->left);
            target.molecules.push_back(mols[j]->body->right);
            action = action_cleave_bond(names[i], names[j]);
          } else if (mols[j]->body->kind == InnerSpecies::Kind::CovalentMod) {
            target.molecules.push_back(mols[j]->body->left);
            action = action_cleave_mod(names[i], names[j]);
          } else {
            continue;
          }
          out.push_back(
              GatedTransition{g.promoters, g.inhibitors, std::move(action), canonicalize(target), {i, j}});
        }
      } else if (const auto* conv = std::get_if<Convert>(&g.op)) {
        if (g.inhibitors.contains(names[i])) continue;
        Process target = without(mols, i);
        append(target, conv->products);
        out.push_back(GatedTransition{g.promoters, g.inhibitors,
                                      action_conversion(names[i], strip_process(conv->products)),
                                      canonicalize(target), {i}});
      } else {
        const auto& prod = std::get<Produce>(g.op);
        if (g.inhibitors.contains(names[i])) continue;
        Process target;
        target.molecules = mols;
        append(target, prod.products);
        out.push_back(GatedTransition{g.promoters, g.inhibitors,
                                      action_production(names[i], strip_process(prod.products)),
                                      canonicalize(target), {i}});
      }
    }
  }
  return out;
}

std::vector<Transition> enabled_transitions(const Process& p) {
  Process canon = canonicalize(p);
  const auto& mols = canon.molecules;
  std::vector<NamePtr> names(mols.size());
  for (std::size_t i = 0; i < mols.size(); ++i) names[i] = strip_species(mols[i]);

  struct Entry {
    Transition t;
    std::string action_key;
    std::string target_key;
  };
  std::vector<Entry> merged;

  for (auto& redex : local_redexes(canon)) {
    NameSet residual = redex.promoters;
    bool blocked = false;
    for (std::size_t q = 0; q < mols.size() && !blocked; ++q) {
      if (std::find(redex.reactants.begin(), redex.reactants.end(), q) != redex.reactants.end()) continue;
      if (redex.inhibitors.contains(names[q])) blocked = true;
      residual.erase(names[q]);
    }
    if (blocked || !residual.empty()) continue;

    Entry e{Transition{std::move(redex.action), std::move(redex.target)}, {}, {}};
    e.action_key = print_action(e.t.action);
    e.target_key = print_process_raw(e.t.target);
    bool duplicate = false;
    for (const auto& existing : merged) {
      if (existing.action_key != e.action_key) continue;
      if (existing.target_key == e.target_key || process_equal(existing.t.target, e.t.target)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) merged.push_back(std::move(e));
  }

  std::sort(merged.begin(), merged.end(), [](const Entry& a, const Entry& b) {
    if (a.action_key != b.action_key) return a.action_key < b.action_key;
    return a.target_key < b.target_key;
  });
  std::vector<Transition> out;
  out.reserve(merged.size());
  for (auto& e : merged) out.push_back(std::move(e.t));
  return out;
}

// ---------------------------------------------------------------------------
// Bounded exploration
// ---------------------------------------------------------------------------

namespace {

std::string state_signature(const Process& p) {
  std::vector<std::string> parts;
  parts.reserve(p.molecules.size());
  for (const auto& s : p.molecules) parts.push_back(print_name_raw(strip_species(s)));
  std::sort(parts.begin(), parts.end());
  std::string sig;
  for (const auto& part : parts) {
    sig += part;
    sig += ';';
  }
  return sig;
}

}  // namespace

Lts explore(const Process& p, std::size_t max_depth, std::size_t max_states) {
  Lts lts;
  Process init = canonicalize(p);
  lts.states.push_back(init);
  lts.state_keys.push_back(print_process_raw(init));

  std::map<std::string, std::size_t> by_key{{lts.state_keys[0], 0}};
  std::map<std::string, std::vector<std::size_t>> by_signature{{state_signature(init), {0}}};
  std::set<std::tuple<std::size_t, std::string, std::size_t>> edge_set;
  std::deque<std::pair<std::size_t, std::size_t>> frontier{{0, 0}};

  while (!frontier.empty()) {
    auto [id, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= max_depth) {
      lts.truncated = true;
      continue;
    }
    for (auto& t : enabled_transitions(lts.states[id])) {
      std::string key = print_process_raw(t.target);
      std::size_t to;
      auto it = by_key.find(key);
      if (it != by_key.end()) {
        to = it->second;
      } else {
        // congruent states can differ syntactically through rec unfolding;
        // fall back to process_equal within the same molecule-name signature
        std::string sig = state_signature(t.target);
        auto& bucket = by_signature[sig];
        std::size_t found = SIZE_MAX;
        for (std::size_t candidate : bucket) {
          if (process_equal(lts.states[candidate], t.target)) {
            found = candidate;
            break;
          }
        }
        if (found != SIZE_MAX) {
          to = found;
          by_key.emplace(std::move(key), to);
        } else {
          if (lts.states.size() >= max_states) {
            lts.truncated = true;
            continue;
          }
          to = lts.states.size();
          lts.states.push_back(t.target);
          lts.state_keys.push_back(key);
          by_key.emplace(std::move(key), to);
          bucket.push_back(to);
          frontier.emplace_back(to, depth + 1);
        }
      }
      if (edge_set.emplace(id, print_action(t.action), to).second)
        lts.edges.push_back(Lts::Edge{id, std::move(t.action), to});
    }
  }
  return lts;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lts_to_dot(const Lts& lts) {
  std::ostringstream out;
  out << "digraph lts {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    out << "  s" << i << " [label=\"" << dot_escape(lts.state_keys[i]) << '"';
    if (i == lts.initial) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& e : lts.edges) {
    out << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(print_action(e.action))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string lts_to_json(const Lts& lts) {
  nlohmann::json j;
  j["states"] = lts.state_keys;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : lts.edges)
    j["edges"].push_back({{"from", e.from}, {"action", print_action(e.action)}, {"to", e.to}});
  j["initial"] = lts.initial;
  j["truncated"] = lts.truncated;
  return j.dump(2);
}

}  // namespace mimc
