#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mimc/term.hpp"

namespace mimc {

/// Transition label. Symmetric kinds (NcBond, NcUnbond, CovBond) keep their
/// name pair in canonical order so that label equality matches bond symmetry.
struct Action {
  enum class Kind { NcBond, NcUnbond, Conversion, Production, CovBond, CleaveBond, Modification, CleaveMod };
  Kind kind = Kind::NcBond;
  NamePtr subject;      // reactant / cleaver / first bond member
  NamePtr object;       // partner, cleaved bond or modified species
  NameSet products;     // Conversion, Production
  std::string modtype;  // Modification
};

Action action_ncbond(const NamePtr& a, const NamePtr& b);
Action action_ncunbond(const NamePtr& a, const NamePtr& b);
Action action_conversion(const NamePtr& reactant, NameSet products);
Action action_production(const NamePtr& producer, NameSet products);
Action action_covbond(const NamePtr& a, const NamePtr& b);
Action action_cleave_bond(const NamePtr& cleaver, const NamePtr& bond);
Action action_modification(const std::string& modtype, const NamePtr& target);
Action action_cleave_mod(const NamePtr& cleaver, const NamePtr& mod);

int compare(const Action& a, const Action& b);
inline bool action_equal(const Action& a, const Action& b) { return compare(a, b) == 0; }

/// Fixed ASCII serialization of the eight transition labels.
std::string print_action(const Action& a);

/// One rule instance before promoter discharge. `reactants` are the indices
/// of the molecules consumed from the canonical source composition.
struct GatedTransition {
  NameSet promoters;
  NameSet inhibitors;
  Action action;
  Process target;  // canonical
  std::vector<std::size_t> reactants;
};

struct Transition {
  Action action;
  Process target;  // canonical
};

struct Lts {
  struct Edge {
    std::size_t from;
    Action action;
    std::size_t to;
  };
  std::vector<Process> states;  // canonical; index 0 is the initial state
  std::vector<std::string> state_keys;
  std::vector<Edge> edges;
  std::size_t initial = 0;
  bool truncated = false;
};

/// Every instance of the reduction rules over the top-level molecules of a
/// canonical process, with contingencies taken verbatim from the fired
/// summand. Reactant-side inhibitor conditions are already applied.
std::vector<GatedTransition> local_redexes(const Process& p);

/// Transitions enabled under the top-level discharge condition: promoters
/// must be discharged by non-reactant molecules and no non-reactant molecule
/// may be an inhibitor. Duplicates are merged; output is deterministically
/// ordered.
std::vector<Transition> enabled_transitions(const Process& p);

/// Breadth-first closure of enabled_transitions, stopping at either bound.
Lts explore(const Process& p, std::size_t max_depth, std::size_t max_states);

std::string lts_to_dot(const Lts& lts);
std::string lts_to_json(const Lts& lts);

}  // namespace mimc
