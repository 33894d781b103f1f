#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "mimc/diagram.hpp"
#include "mimc/syntax.hpp"

namespace mimc {

// ---------------------------------------------------------------------------
// JSON decoding
// ---------------------------------------------------------------------------

namespace {

NamePtr parse_diagram_name(const std::string& text, const std::string& where) {
  try {
    return canonical_name(parse_name(text));
  } catch (const ParseError& e) {
    throw DiagramError(where + ": bad name '" + text + "': " + e.what());
  }
}

NameSet name_list(const nlohmann::json& j, const char* field, const std::string& where) {
  NameSet out;
  if (!j.contains(field)) return out;
  for (const auto& item : j.at(field)) out.insert(parse_diagram_name(item.get<std::string>(), where));
  return out;
}

}  // namespace

DiagramSpec diagram_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(std::string("invalid diagram JSON: ") + e.what());
  }

  if (j.contains("interpretation")) {
    std::string interp = j.at("interpretation").get<std::string>();
    if (interp != "explicit")
      throw DiagramError("interpretation '" + interp +
                         "' is not supported: only the explicit interpretation is compiled, where an "
                         "interaction applies solely to the directly connected species");
  }

  DiagramSpec spec;
  for (const auto& js : j.value("species", nlohmann::json::array())) {
    DiagramSpecies sp;
    std::string id = js.at("id").get<std::string>();
    sp.name = parse_diagram_name(id, "species");
    std::string kind = js.value("kind", "elementary");
    if (kind == "elementary") {
      sp.elementary = true;
      if (sp.name->kind != Name::Kind::Elementary)
        throw DiagramError("species '" + id + "' declared elementary but has compound shape");
    } else if (kind == "complex") {
      sp.elementary = false;
    } else {
      throw DiagramError("species '" + id + "': unknown kind '" + kind + "'");
    }
    sp.count = js.value("count", 0);
    if (sp.count < 0) throw DiagramError("species '" + id + "': negative count");
    spec.species.push_back(std::move(sp));
  }

  for (const auto& jr : j.value("reactions", nlohmann::json::array())) {
    DiagramReaction rx;
    std::string kind = jr.at("kind").get<std::string>();
    std::string where = "reaction '" + kind + "'";
    if (kind == "stimulation" || kind == "catalysis")
      throw DiagramError(kind +
                         " is a rate-level contingency with no counterpart here; use promoters "
                         "(requirement) or inhibitors (inhibition) instead");
    if (kind == "ncb")
      rx.kind = DiagramReaction::Kind::NcBind;
    else if (kind == "cb")
      rx.kind = DiagramReaction::Kind::CovBind;
    else if (kind == "mod")
      rx.kind = DiagramReaction::Kind::Mod;
    else if (kind == "cleave")
      rx.kind = DiagramReaction::Kind::Cleave;
    else if (kind == "conv")
      rx.kind = DiagramReaction::Kind::Convert;
    else if (kind == "prod")
      rx.kind = DiagramReaction::Kind::Produce;
    else if (kind == "degrade")
      rx.kind = DiagramReaction::Kind::Degrade;
    else
      throw DiagramError("unknown reaction kind '" + kind + "'");

    for (const auto& part : jr.value("participants", nlohmann::json::array()))
      rx.participants.push_back(parse_diagram_name(part.get<std::string>(), where));

    auto need_participants = [&](std::size_t want) {
      if (rx.participants.size() != want)
        throw DiagramError(where + ": expected " + std::to_string(want) + " participant(s), got " +
                           std::to_string(rx.participants.size()));
    };
    switch (rx.kind) {
      case DiagramReaction::Kind::NcBind:
      case DiagramReaction::Kind::CovBind:
        need_participants(2);
        break;
      default:
        need_participants(1);
        break;
    }

    if (rx.kind == DiagramReaction::Kind::Mod) {
      if (!jr.contains("modtype")) throw DiagramError(where + ": missing modtype");
      rx.modtype = jr.at("modtype").get<std::string>();
    }
    if (rx.kind == DiagramReaction::Kind::Cleave) {
      if (!jr.contains("target")) throw DiagramError(where + ": missing target");
      rx.cleave_target = parse_diagram_name(jr.at("target").get<std::string>(), where);
      if (rx.cleave_target->kind != Name::Kind::CovalentBond &&
          rx.cleave_target->kind != Name::Kind::CovalentMod)
        throw DiagramError(where + ": cleave target must be a covalent bond or modification");
    }
    if (rx.kind == DiagramReaction::Kind::Convert || rx.kind == DiagramReaction::Kind::Produce) {
      for (const auto& jp : jr.value("products", nlohmann::json::array())) {
        NamePtr n = parse_diagram_name(jp.at("name").get<std::string>(), where);
        int mult = jp.value("multiplicity", 1);
        if (mult < 1) throw DiagramError(where + ": product multiplicity must be positive");
        rx.products.emplace_back(std::move(n), mult);
      }
    }
    rx.promoters = name_list(jr, "promoters", where);
    rx.inhibitors = name_list(jr, "inhibitors", where);
    if (jr.contains("product_caps_ref"))
      rx.product_caps_ref = parse_diagram_name(jr.at("product_caps_ref").get<std::string>(), where);
    spec.reactions.push_back(std::move(rx));
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Compilation
// ---------------------------------------------------------------------------

namespace {

NamePtr created_name(const DiagramReaction& rx) {
  switch (rx.kind) {
    case DiagramReaction::Kind::NcBind:
      return canonical_name(name_noncov(rx.participants[0], rx.participants[1]));
    case DiagramReaction::Kind::CovBind:
      return canonical_name(name_bond(rx.participants[0], rx.participants[1]));
    case DiagramReaction::Kind::Mod:
      return canonical_name(name_mod(rx.modtype, rx.participants[0]));
    default:
      return nullptr;
  }
}

struct Compiler {
  const DiagramSpec& spec;

  // per name: incident reaction summand builders, in declaration order
  struct Incident {
    const DiagramReaction* rx;
    NamePtr continuation_ref;  // bind/cbind/mod target entry
  };
  std::map<std::string, std::vector<Incident>> incident;
  std::map<std::string, NamePtr> pool;

  // per-entry construction state
  std::vector<std::pair<std::string, std::string>> visiting;  // name key -> rec var
  std::set<std::string> used_vars;
  int var_counter = 0;

  void add_pool(const NamePtr& n) {
    if (!pool.emplace(print_name_raw(n), n).second) return;
    if (n->left) add_pool(n->left);
    if (n->right) add_pool(n->right);
  }
  bool known(const NamePtr& n) const { return pool.count(print_name_raw(n)) != 0; }

  void resolve() {
    for (const auto& sp : spec.species) add_pool(sp.name);
    bool changed = true;
    std::vector<bool> placed(spec.reactions.size(), false);
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < spec.reactions.size(); ++i) {
        if (placed[i]) continue;
        const auto& rx = spec.reactions[i];
        bool ok = std::all_of(rx.participants.begin(), rx.participants.end(),
                              [&](const NamePtr& n) { return known(n); });
        if (!ok) continue;
        placed[i] = true;
        changed = true;
        if (NamePtr n = created_name(rx)) add_pool(n);
      }
    }
    for (std::size_t i = 0; i < spec.reactions.size(); ++i) {
      if (placed[i]) continue;
      for (const auto& part : spec.reactions[i].participants)
        if (!known(part))
          throw DiagramError("unresolvable participant name '" + print_name_raw(part) +
                             "': not declared and not produced by any reaction");
    }
    // remaining references must land in the pool as well
    for (const auto& rx : spec.reactions) {
      for (const auto& [n, mult] : rx.products) {
        (void)mult;
        if (!known(n))
          throw DiagramError("unresolvable product name '" + print_name_raw(n) + "'");
      }
      if (rx.cleave_target && !known(rx.cleave_target))
        throw DiagramError("unresolvable cleave target '" + print_name_raw(rx.cleave_target) + "'");
      if (rx.product_caps_ref && !known(*rx.product_caps_ref))
        throw DiagramError("unresolvable product_caps_ref '" + print_name_raw(*rx.product_caps_ref) +
                           "'");
    }
  }

  void index() {
    for (const auto& rx : spec.reactions) {
      switch (rx.kind) {
        case DiagramReaction::Kind::NcBind:
        case DiagramReaction::Kind::CovBind: {
          NamePtr ref = rx.product_caps_ref ? *rx.product_caps_ref : created_name(rx);
          incident[print_name_raw(rx.participants[0])].push_back({&rx, ref});
          if (compare(rx.participants[0], rx.participants[1]) != 0)
            incident[print_name_raw(rx.participants[1])].push_back({&rx, ref});
          break;
        }
        case DiagramReaction::Kind::Mod: {
          NamePtr ref = rx.product_caps_ref ? *rx.product_caps_ref : created_name(rx);
          incident[print_name_raw(rx.participants[0])].push_back({&rx, ref});
          break;
        }
        default:
          incident[print_name_raw(rx.participants[0])].push_back({&rx, nullptr});
          break;
      }
    }
  }

  CapPtr entry(const NamePtr& name) {
    std::string key = print_name_raw(name);
    for (const auto& [vkey, var] : visiting) {
      if (vkey == key) {
        used_vars.insert(var);
        return cap_var(var);
      }
    }
    std::string var = "v" + std::to_string(var_counter++);
    visiting.emplace_back(key, var);
    std::vector<BasicCap> summands;
    auto it = incident.find(key);
    if (it != incident.end()) {
      for (const auto& inc : it->second) {
        const DiagramReaction& rx = *inc.rx;
        CapOp op;
        switch (rx.kind) {
          case DiagramReaction::Kind::NcBind: {
            const NamePtr& partner =
                name_equal(rx.participants[0], name) ? rx.participants[1] : rx.participants[0];
            op = NonCovBind{partner, entry(inc.continuation_ref)};
            break;
          }
          case DiagramReaction::Kind::CovBind: {
            const NamePtr& partner =
                name_equal(rx.participants[0], name) ? rx.participants[1] : rx.participants[0];
            op = CovBind{partner, entry(inc.continuation_ref)};
            break;
          }
          case DiagramReaction::Kind::Mod:
            op = CovMod{rx.modtype, entry(inc.continuation_ref)};
            break;
          case DiagramReaction::Kind::Cleave:
            op = Cleave{rx.cleave_target};
            break;
          case DiagramReaction::Kind::Convert:
          case DiagramReaction::Kind::Produce: {
            Process payload;
            for (const auto& [pname, mult] : rx.products)
              for (int m = 0; m < mult; ++m) payload.molecules.push_back(species(pname));
            if (rx.kind == DiagramReaction::Kind::Convert)
              op = Convert{std::move(payload)};
            else
              op = Produce{std::move(payload)};
            break;
          }
          case DiagramReaction::Kind::Degrade:
            op = Convert{Process{}};
            break;
        }
        summands.push_back(BasicCap{rx.promoters, rx.inhibitors, std::move(op)});
      }
    }
    visiting.pop_back();
    CapPtr sum = cap_sum(std::move(summands));
    if (used_vars.count(var)) {
      used_vars.erase(var);
      return cap_rec(var, sum);
    }
    return sum;
  }

  SpeciesPtr species(const NamePtr& name) {
    CapPtr caps = entry(name);
    return make_species(std::move(caps), body_of(name));
  }

  InnerPtr body_of(const NamePtr& name) {
    switch (name->kind) {
      case Name::Kind::Elementary:
        return inner_elem(name->ident);
      case Name::Kind::NonCovalent:
        return inner_noncov(species(name->left), species(name->right));
      case Name::Kind::CovalentMod:
        return inner_mod(name->ident, species(name->left));
      case Name::Kind::CovalentBond:
        return inner_bond(species(name->left), species(name->right));
    }
    throw DiagramError("corrupt name");
  }
};

}  // namespace

const CapPtr* SpeciesTable::find(const NamePtr& name) const {
  NamePtr canon = canonical_name(name);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), canon,
                             [](const auto& e, const NamePtr& n) { return compare(e.first, n) < 0; });
  if (it == entries_.end() || compare(it->first, canon) != 0) return nullptr;
  return &it->second;
}

SpeciesTable compile_table(const DiagramSpec& d) {
  Compiler compiler{d, {}, {}, {}, {}, 0};
  compiler.resolve();
  compiler.index();

  SpeciesTable table;
  for (const auto& [key, name] : compiler.pool) {
    (void)key;
    compiler.visiting.clear();
    compiler.used_vars.clear();
    compiler.var_counter = 0;
    table.entries_.emplace_back(name, canonicalize_cap(compiler.entry(name)));
  }
  std::sort(table.entries_.begin(), table.entries_.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  return table;
}

SpeciesPtr table_species(const SpeciesTable& t, const NamePtr& name) {
  // rebuild through a compiler-shaped recursion over the table itself
  struct Builder {
    const SpeciesTable& table;

    SpeciesPtr build(const NamePtr& n) const {
      const CapPtr* caps = table.find(n);
      if (!caps) throw DiagramError("unknown species name '" + print_name_raw(n) + "'");
      return make_species(*caps, body(n));
    }

    InnerPtr body(const NamePtr& n) const {
      switch (n->kind) {
        case Name::Kind::Elementary:
          return inner_elem(n->ident);
        case Name::Kind::NonCovalent:
          return inner_noncov(build(n->left), build(n->right));
        case Name::Kind::CovalentMod:
          return inner_mod(n->ident, build(n->left));
        case Name::Kind::CovalentBond:
          return inner_bond(build(n->left), build(n->right));
      }
      throw DiagramError("corrupt name");
    }
  };
  return Builder{t}.build(canonical_name(name));
}

Process instantiate(const SpeciesTable& t, const std::vector<std::pair<NamePtr, int>>& counts) {
  Process out;
  for (const auto& [name, count] : counts) {
    if (count < 0) throw DiagramError("negative count for '" + print_name_raw(name) + "'");
    if (count == 0) continue;
    SpeciesPtr sp = table_species(t, name);
    for (int i = 0; i < count; ++i) out.molecules.push_back(sp);
  }
  return canonicalize(out);
}

std::vector<std::pair<NamePtr, int>> declared_counts(const DiagramSpec& d) {
  std::vector<std::pair<NamePtr, int>> out;
  out.reserve(d.species.size());
  for (const auto& sp : d.species) out.emplace_back(sp.name, sp.count);
  return out;
}

}  // namespace mimc
