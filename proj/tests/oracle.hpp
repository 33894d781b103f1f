#pragma once

#include <algorithm>
#include <vector>

#include "mimc/semantics.hpp"
#include "mimc/term.hpp"

// Brute-force reference for the reduction relation: instantiates each base
// rule over all molecule tuples of a state, then folds the parallel rule
// molecule by molecule and applies the top-level discharge condition
// literally. Kept independent of local_redexes / enabled_transitions.
namespace oracle {

struct Candidate {
  mimc::NameSet promoters;
  mimc::NameSet inhibitors;
  mimc::Action action;
  mimc::Process core;             // molecules produced by the base rule
  std::vector<std::size_t> used;  // molecule indices the base rule consumed
};

inline std::vector<Candidate> base_instances(const std::vector<mimc::SpeciesPtr>& mols) {
  using namespace mimc;
  std::vector<Candidate> out;
  const std::size_t n = mols.size();

  for (std::size_t i = 0; i < n; ++i) {
    const SpeciesPtr& s = mols[i];
    NamePtr self = strip_species(s);

    if (s->body->kind == InnerSpecies::Kind::NonCovalent) {
      Candidate c;
      c.action = action_ncunbond(strip_species(s->body->left), strip_species(s->body->right));
      c.core.molecules = {s->body->left, s->body->right};
      c.used = {i};
      out.push_back(std::move(c));
    }

    for (const auto& g : head_summands(s->caps)) {
      if (g.inhibitors.contains(self)) continue;
      if (const auto* cv = std::get_if<Convert>(&g.op)) {
        out.push_back(Candidate{g.promoters, g.inhibitors,
                                action_conversion(self, strip_process(cv->products)), cv->products,
                                {i}});
      } else if (const auto* pr = std::get_if<Produce>(&g.op)) {
        Candidate c{g.promoters, g.inhibitors, action_production(self, strip_process(pr->products)),
                    pr->products, {i}};
        c.core.molecules.push_back(s);
        out.push_back(std::move(c));
      } else if (const auto* m = std::get_if<CovMod>(&g.op)) {
        Candidate c{g.promoters, g.inhibitors, action_modification(m->modtype, self), {}, {i}};
        c.core.molecules.push_back(make_species(m->cont, inner_mod(m->modtype, s)));
        out.push_back(std::move(c));
      } else if (const auto* b = std::get_if<NonCovBind>(&g.op)) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          NamePtr other = strip_species(mols[j]);
          if (!name_equal(other, b->partner) || g.inhibitors.contains(other)) continue;
          Candidate c{g.promoters, g.inhibitors, action_ncbond(self, other), {}, {i, j}};
          c.core.molecules.push_back(make_species(b->cont, inner_noncov(s, mols[j])));
          out.push_back(std::move(c));
        }
      } else if (const auto* cb = std::get_if<CovBind>(&g.op)) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          NamePtr other = strip_species(mols[j]);
          if (!name_equal(other, cb->partner) || g.inhibitors.contains(other)) continue;
          Candidate c{g.promoters, g.inhibitors, action_covbond(self, other), {}, {i, j}};
          c.core.molecules.push_back(make_species(cb->cont, inner_bond(s, mols[j])));
          out.push_back(std::move(c));
        }
      } else if (const auto* cl = std::get_if<Cleave>(&g.op)) {
        if (g.inhibitors.contains(cl->target)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || !name_equal(strip_species(mols[j]), cl->target)) continue;
          Candidate c{g.promoters, g.inhibitors, Action{}, {}, {i, j}};
          c.core.molecules.push_back(s);
          if (mols[j]->body->kind == InnerSpecies::Kind::CovalentBond) {
            c.action = action_cleave_bond(self, cl->target);
            c.core.molecules.push_back(mols[j]->body->left);
            c.core.molecules.push_back(mols[j]->body->right);
          } else {
            c.action = action_cleave_mod(self, cl->target);
            c.core.molecules.push_back(mols[j]->body->left);
          }
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

inline std::vector<mimc::Transition> transitions(const mimc::Process& p) {
  using namespace mimc;
  Process canon = canonicalize(p);
  const auto& mols = canon.molecules;
  std::vector<Transition> result;

  for (const auto& cand : base_instances(mols)) {
    NameSet residual = cand.promoters;
    bool blocked = false;
    Process target = cand.core;
    for (std::size_t q = 0; q < mols.size(); ++q) {
      if (std::find(cand.used.begin(), cand.used.end(), q) != cand.used.end()) continue;
      NamePtr qn = strip_species(mols[q]);
      if (cand.inhibitors.contains(qn)) {
        blocked = true;
        break;
      }
      residual.erase(qn);
      target.molecules.push_back(mols[q]);
    }
    if (blocked || !residual.empty()) continue;

    Transition t{cand.action, canonicalize(target)};
    bool duplicate = false;
    for (const auto& existing : result) {
      if (action_equal(existing.action, t.action) && process_equal(existing.target, t.target)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) result.push_back(std::move(t));
  }
  return result;
}

inline bool same_transition_sets(const std::vector<mimc::Transition>& a,
                                 const std::vector<mimc::Transition>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ta : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (mimc::action_equal(ta.action, b[j].action) && mimc::process_equal(ta.target, b[j].target)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace oracle
