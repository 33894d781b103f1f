#include <algorithm>
#include <map>
#include <random>

#include "json.hpp"
#include "mimc/consistency.hpp"
#include "mimc/gen.hpp"
#include "mimc/semantics.hpp"
#include "mimc/syntax.hpp"

namespace mimc {

// ---------------------------------------------------------------------------
// Context positions
// ---------------------------------------------------------------------------

namespace {

struct PositionWalker {
  std::vector<PositionEntry> entries;
  std::vector<std::pair<std::string, CapPtr>> env;  // rec var -> closed rec term

  CapPtr close(CapPtr c) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) c = substitute(c, it->first, it->second);
    return c;
  }

  void process(const Process& p, const std::string& path) {
    for (std::size_t i = 0; i < p.molecules.size(); ++i)
      species(p.molecules[i], path + "mol[" + std::to_string(i) + "]");
  }

  void species(const SpeciesPtr& s, const std::string& path) {
    capability(s->caps, strip_species(s), path + ".caps");
    switch (s->body->kind) {
      case InnerSpecies::Kind::Elementary:
        break;
      case InnerSpecies::Kind::CovalentMod:
        species(s->body->left, path + ".inner");
        break;
      case InnerSpecies::Kind::NonCovalent:
      case InnerSpecies::Kind::CovalentBond:
        species(s->body->left, path + ".fst");
        species(s->body->right, path + ".snd");
        break;
    }
  }

  void capability(const CapPtr& c, const NamePtr& name, const std::string& path) {
    if (std::holds_alternative<Capability::Var>(c->node)) return;
    entries.push_back(PositionEntry{name, close(c), path});
    CapPtr cur = c;
    std::size_t pushed = 0;
    while (const auto* rec = std::get_if<Capability::Rec>(&cur->node)) {
      env.emplace_back(rec->var, close(cur));
      ++pushed;
      cur = rec->body;
    }
    if (const auto* sum = std::get_if<Capability::Sum>(&cur->node)) {
      for (std::size_t k = 0; k < sum->summands.size(); ++k) {
        const BasicCap& g = sum->summands[k];
        std::string gpath = path + ".sum[" + std::to_string(k) + "]";
        if (const auto* b = std::get_if<NonCovBind>(&g.op)) {
          capability(b->cont, canonical_name(name_noncov(name, b->partner)), gpath + ".bind");
        } else if (const auto* cb = std::get_if<CovBind>(&g.op)) {
          capability(cb->cont, canonical_name(name_bond(name, cb->partner)), gpath + ".cbind");
        } else if (const auto* m = std::get_if<CovMod>(&g.op)) {
          capability(m->cont, canonical_name(name_mod(m->modtype, name)), gpath + ".mod");
        } else if (const auto* cv = std::get_if<Convert>(&g.op)) {
          process(cv->products, gpath + ".conv.");
        } else if (const auto* pr = std::get_if<Produce>(&g.op)) {
          process(pr->products, gpath + ".prod.");
        }
      }
    }
    env.resize(env.size() - pushed);
  }
};

}  // namespace

std::vector<PositionEntry> enumerate_positions(const Process& p) {
  PositionWalker walker;
  walker.process(canonicalize(p), "");
  return walker.entries;
}

// ---------------------------------------------------------------------------
// Consistency checks
// ---------------------------------------------------------------------------

namespace {

struct Group {
  NamePtr name;
  std::vector<const PositionEntry*> entries;
};

std::vector<Group> group_by_name(const std::vector<PositionEntry>& entries) {
  std::map<std::string, Group> groups;
  for (const auto& e : entries) {
    auto& g = groups[print_name_raw(e.name)];
    if (!g.name) g.name = e.name;
    g.entries.push_back(&e);
  }
  std::vector<Group> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

}  // namespace

ConsistencyVerdict check_weak(const Process& p) {
  auto entries = enumerate_positions(p);
  for (const auto& group : group_by_name(entries)) {
    for (std::size_t k = 1; k < group.entries.size(); ++k) {
      if (!caps_equal(group.entries[0]->caps, group.entries[k]->caps)) {
        Witness w;
        w.kind = Witness::Kind::CapabilityClash;
        w.first = *group.entries[0];
        w.second = *group.entries[k];
        w.detail = "two positions of " + print_name_raw(group.name) + " carry different capabilities";
        return ConsistencyVerdict{ConsistencyVerdict::Kind::Inconsistent, 0, std::move(w)};
      }
    }
  }
  return ConsistencyVerdict{};
}

namespace {

struct ReciprocalSummand {
  NameSet promoters;
  NameSet inhibitors;
  CapPtr cont;
};

std::vector<ReciprocalSummand> bind_summands(const CapPtr& caps, const NamePtr& partner, bool covalent) {
  std::vector<ReciprocalSummand> out;
  for (const auto& g : head_summands(caps)) {
    if (covalent) {
      if (const auto* cb = std::get_if<CovBind>(&g.op))
        if (name_equal(cb->partner, partner)) out.push_back({g.promoters, g.inhibitors, cb->cont});
    } else {
      if (const auto* b = std::get_if<NonCovBind>(&g.op))
        if (name_equal(b->partner, partner)) out.push_back({g.promoters, g.inhibitors, b->cont});
    }
  }
  return out;
}

bool reciprocal_covered(const std::vector<ReciprocalSummand>& have, const ReciprocalSummand& want) {
  for (const auto& h : have) {
    if (compare(h.promoters, want.promoters) == 0 && compare(h.inhibitors, want.inhibitors) == 0 &&
        caps_equal(h.cont, want.cont))
      return true;
  }
  return false;
}

}  // namespace

ConsistencyVerdict check_strong(const Process& p) {
  ConsistencyVerdict weak = check_weak(p);
  if (weak.kind != ConsistencyVerdict::Kind::Consistent) return weak;

  auto entries = enumerate_positions(p);
  auto groups = group_by_name(entries);

  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& g1 = groups[i];
      const auto& g2 = groups[j];
      for (bool covalent : {false, true}) {
        auto s1 = bind_summands(g1.entries[0]->caps, g2.name, covalent);
        auto s2 = bind_summands(g2.entries[0]->caps, g1.name, covalent);
        const char* opword = covalent ? "cbind" : "bind";
        for (const auto& want : s1) {
          if (!reciprocal_covered(s2, want)) {
            Witness w;
            w.kind = Witness::Kind::MissingReciprocal;
            w.first = *g1.entries[0];
            w.second = *g2.entries[0];
            w.detail = print_name_raw(g2.name) + " lacks " + opword + "(" + print_name_raw(g1.name) +
                       ")" + print_capability(want.cont);
            return ConsistencyVerdict{ConsistencyVerdict::Kind::Inconsistent, 0, std::move(w)};
          }
        }
        for (const auto& want : s2) {
          if (!reciprocal_covered(s1, want)) {
            Witness w;
            w.kind = Witness::Kind::MissingReciprocal;
            w.first = *g2.entries[0];
            w.second = *g1.entries[0];
            w.detail = print_name_raw(g1.name) + " lacks " + opword + "(" + print_name_raw(g2.name) +
                       ")" + print_capability(want.cont);
            return ConsistencyVerdict{ConsistencyVerdict::Kind::Inconsistent, 0, std::move(w)};
          }
        }
      }
    }
  }
  return ConsistencyVerdict{};
}

ConsistencyVerdict check_semantic(const Process& p, std::size_t max_depth, std::size_t max_states) {
  Lts lts = explore(p, max_depth, max_states);

  struct Seen {
    CapPtr caps;
    std::vector<std::string> equal_keys;
    std::size_t state;
    std::size_t mol;
  };
  std::map<std::string, Seen> by_name;

  for (std::size_t sid = 0; sid < lts.states.size(); ++sid) {
    const auto& mols = lts.states[sid].molecules;
    for (std::size_t k = 0; k < mols.size(); ++k) {
      std::string name_key = print_name_raw(strip_species(mols[k]));
      std::string cap_key = print_cap_raw(mols[k]->caps);
      auto it = by_name.find(name_key);
      if (it == by_name.end()) {
        by_name.emplace(name_key, Seen{mols[k]->caps, {cap_key}, sid, k});
        continue;
      }
      Seen& seen = it->second;
      if (std::find(seen.equal_keys.begin(), seen.equal_keys.end(), cap_key) != seen.equal_keys.end())
        continue;
      if (caps_equal(seen.caps, mols[k]->caps)) {
        seen.equal_keys.push_back(std::move(cap_key));
        continue;
      }
      Witness w;
      w.kind = Witness::Kind::StateClash;
      w.first = PositionEntry{strip_species(mols[k]), seen.caps,
                              "state[" + std::to_string(seen.state) + "].mol[" + std::to_string(seen.mol) + "]"};
      w.second = PositionEntry{strip_species(mols[k]), mols[k]->caps,
                               "state[" + std::to_string(sid) + "].mol[" + std::to_string(k) + "]"};
      w.detail = "species " + name_key + " reached with different capabilities";
      w.state_first = lts.state_keys[seen.state];
      w.state_second = lts.state_keys[sid];
      return ConsistencyVerdict{ConsistencyVerdict::Kind::Inconsistent, 0, std::move(w)};
    }
  }

  if (lts.truncated)
    return ConsistencyVerdict{ConsistencyVerdict::Kind::ConsistentUpToDepth, max_depth, std::nullopt};
  return ConsistencyVerdict{};
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json entry_json(const PositionEntry& e) {
  return {{"name", print_name_raw(e.name)}, {"caps", print_capability(e.caps)}, {"path", e.path}};
}

}  // namespace

std::string verdict_to_json(const ConsistencyVerdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case ConsistencyVerdict::Kind::Consistent:
      j["verdict"] = "consistent";
      break;
    case ConsistencyVerdict::Kind::ConsistentUpToDepth:
      j["verdict"] = "consistent-up-to-depth";
      j["depth"] = v.depth;
      break;
    case ConsistencyVerdict::Kind::Inconsistent:
      j["verdict"] = "inconsistent";
      break;
  }
  if (v.witness) {
    const Witness& w = *v.witness;
    nlohmann::json wj;
    switch (w.kind) {
      case Witness::Kind::CapabilityClash:
        wj["kind"] = "capability-clash";
        break;
      case Witness::Kind::MissingReciprocal:
        wj["kind"] = "missing-reciprocal";
        break;
      case Witness::Kind::StateClash:
        wj["kind"] = "state-clash";
        break;
    }
    wj["first"] = entry_json(w.first);
    wj["second"] = entry_json(w.second);
    wj["detail"] = w.detail;
    if (!w.state_first.empty()) {
      wj["state_first"] = w.state_first;
      wj["state_second"] = w.state_second;
    }
    j["witness"] = wj;
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Property harness
// ---------------------------------------------------------------------------

Prop1Report run_proposition1(std::uint64_t seed, std::size_t trials, std::size_t depth,
                             std::size_t max_states) {
  if (trials < 1) throw std::invalid_argument("run_proposition1: trials must be at least 1");
  Prop1Report report;
  report.seed = seed;
  report.trials = trials;
  report.depth = depth;

  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    DiagramSpec d = random_diagram(rng);
    SpeciesTable table = compile_table(d);
    std::vector<std::pair<NamePtr, int>> counts;
    for (const auto& sp : d.species) counts.emplace_back(sp.name, static_cast<int>(rng() % 4));
    Process p = instantiate(table, counts);

    ConsistencyVerdict weak = check_weak(p);
    if (weak.kind != ConsistencyVerdict::Kind::Consistent) {
      report.failures.push_back(Prop1Failure{trial, print_process(p), "weak", verdict_to_json(weak)});
      continue;
    }
    ConsistencyVerdict semantic = check_semantic(p, depth, max_states);
    if (semantic.kind == ConsistencyVerdict::Kind::Inconsistent) {
      report.failures.push_back(
          Prop1Failure{trial, print_process(p), "semantic", verdict_to_json(semantic)});
    }
  }
  return report;
}

std::string report_to_json(const Prop1Report& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["depth"] = r.depth;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"trial", f.trial},
                             {"term", f.term},
                             {"stage", f.stage},
                             {"verdict", nlohmann::json::parse(f.verdict_json)}});
  }
  j["ok"] = r.failures.empty();
  return j.dump(2);
}

}  // namespace mimc
