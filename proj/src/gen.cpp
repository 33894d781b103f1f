#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mimc/gen.hpp"
#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

namespace mimc {

namespace {

// Draw through the engine directly; distribution objects are not portable
// across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

bool chance(std::mt19937_64& rng, int percent) {
  return static_cast<int>(draw(rng, 100)) < percent;
}

const char* kElems[] = {"A", "B", "C", "D", "E", "F"};
const char* kMods[] = {"p", "q"};

struct TermGen {
  std::mt19937_64& rng;
  const GenOptions& opts;
  std::vector<std::string> scope;
  int rec_counter = 0;

  NamePtr name(int depth) {
    if (depth <= 0 || chance(rng, 60)) return name_elem(kElems[draw(rng, 6)]);
    switch (draw(rng, 3)) {
      case 0:
        return name_noncov(name(depth - 1), name(depth - 1));
      case 1:
        return name_mod(kMods[draw(rng, 2)], name(depth - 1));
      default:
        return name_bond(name(depth - 1), name(depth - 1));
    }
  }

  NamePtr cleavable_name(int depth) {
    if (chance(rng, 50)) return name_bond(name(depth - 1), name(depth - 1));
    return name_mod(kMods[draw(rng, 2)], name(depth - 1));
  }

  NameSet nameset(int depth) {
    NameSet out;
    std::size_t n = draw(rng, 3);
    for (std::size_t i = 0; i < n; ++i) out.insert(name(depth));
    return out;
  }

  CapPtr continuation(int depth) {
    if (!scope.empty() && chance(rng, 30)) return cap_var(scope[draw(rng, scope.size())]);
    return capability(depth);
  }

  BasicCap gamma(int depth) {
    BasicCap g;
    if (opts.allow_contingencies && chance(rng, 25)) {
      g.promoters = nameset(1);
      g.inhibitors = nameset(1);
    }
    switch (draw(rng, 6)) {
      case 0:
        g.op = NonCovBind{name(1), continuation(depth - 1)};
        break;
      case 1:
        g.op = CovBind{name(1), continuation(depth - 1)};
        break;
      case 2:
        g.op = CovMod{kMods[draw(rng, 2)], continuation(depth - 1)};
        break;
      case 3:
        g.op = Cleave{cleavable_name(1)};
        break;
      case 4:
        g.op = Convert{process(depth - 1, draw(rng, 3))};
        break;
      default:
        g.op = Produce{process(depth - 1, 1 + draw(rng, 2))};
        break;
    }
    return g;
  }

  CapPtr capability(int depth) {
    if (depth <= 0) return cap_empty();
    bool rec = opts.allow_rec && chance(rng, 25);
    std::string var;
    if (rec) {
      var = "r" + std::to_string(rec_counter++);
      scope.push_back(var);
    }
    std::vector<BasicCap> summands;
    std::size_t n = draw(rng, static_cast<std::size_t>(opts.max_summands) + 1);
    if (rec && n == 0) n = 1;
    for (std::size_t i = 0; i < n; ++i) summands.push_back(gamma(depth));
    if (rec) scope.pop_back();
    CapPtr sum = cap_sum(std::move(summands));
    return rec ? cap_rec(std::move(var), std::move(sum)) : sum;
  }

  SpeciesPtr species(int depth) {
    CapPtr caps = capability(depth);
    InnerPtr body;
    if (depth <= 0 || chance(rng, 65)) {
      body = inner_elem(kElems[draw(rng, 6)]);
    } else {
      switch (draw(rng, 3)) {
        case 0:
          body = inner_noncov(species(depth - 1), species(depth - 1));
          break;
        case 1:
          body = inner_mod(kMods[draw(rng, 2)], species(depth - 1));
          break;
        default:
          body = inner_bond(species(depth - 1), species(depth - 1));
          break;
      }
    }
    return make_species(std::move(caps), std::move(body));
  }

  Process process(int depth, std::size_t molecules) {
    Process out;
    for (std::size_t i = 0; i < molecules; ++i) out.molecules.push_back(species(depth));
    return out;
  }
};

}  // namespace

Process random_process(std::mt19937_64& rng, const GenOptions& opts) {
  TermGen gen{rng, opts, {}, 0};
  std::size_t molecules = draw(rng, static_cast<std::size_t>(opts.max_molecules) + 1);
  Process p = gen.process(opts.max_depth, molecules);
  validate_process(p);
  return p;
}

// ---------------------------------------------------------------------------
// Random diagrams
// ---------------------------------------------------------------------------

DiagramSpec random_diagram(std::mt19937_64& rng, int max_species, int max_summands) {
  DiagramSpec spec;
  std::size_t n_elem = 1 + draw(rng, static_cast<std::size_t>(max_species));
  std::vector<NamePtr> pool;
  std::map<std::string, int> budget;  // summands already installed per species

  for (std::size_t i = 0; i < n_elem; ++i) {
    NamePtr n = name_elem(std::string("S") + std::to_string(i));
    spec.species.push_back(DiagramSpecies{n, true, 0});
    pool.push_back(n);
  }

  auto key = [](const NamePtr& n) { return print_name_raw(canonical_name(n)); };
  auto has_budget = [&](const NamePtr& n) { return budget[key(n)] < max_summands; };
  auto spend = [&](const NamePtr& n) { ++budget[key(n)]; };
  auto pick = [&]() { return pool[draw(rng, pool.size())]; };
  auto add_pool = [&](const NamePtr& n) {
    for (const auto& existing : pool)
      if (name_equal(existing, n)) return;
    pool.push_back(n);
  };

  std::size_t attempts = 2 + draw(rng, 7);
  for (std::size_t i = 0; i < attempts; ++i) {
    DiagramReaction rx;
    switch (draw(rng, 6)) {
      case 0: {
        NamePtr a = pick();
        NamePtr b = pick();
        if (!has_budget(a) || !has_budget(b)) continue;
        rx.kind = DiagramReaction::Kind::NcBind;
        rx.participants = {a, b};
        spend(a);
        if (compare(canonical_name(a), canonical_name(b)) != 0) spend(b);
        add_pool(canonical_name(name_noncov(a, b)));
        break;
      }
      case 1: {
        NamePtr a = pick();
        NamePtr b = pick();
        if (!has_budget(a) || !has_budget(b)) continue;
        rx.kind = DiagramReaction::Kind::CovBind;
        rx.participants = {a, b};
        spend(a);
        if (compare(canonical_name(a), canonical_name(b)) != 0) spend(b);
        add_pool(canonical_name(name_bond(a, b)));
        break;
      }
      case 2: {
        NamePtr a = pick();
        if (!has_budget(a)) continue;
        rx.kind = DiagramReaction::Kind::Mod;
        rx.modtype = kMods[draw(rng, 2)];
        rx.participants = {a};
        spend(a);
        add_pool(canonical_name(name_mod(rx.modtype, a)));
        break;
      }
      case 3: {
        std::vector<NamePtr> cleavable;
        for (const auto& n : pool)
          if (n->kind == Name::Kind::CovalentBond || n->kind == Name::Kind::CovalentMod)
            cleavable.push_back(n);
        if (cleavable.empty()) continue;
        NamePtr cleaver = pick();
        if (!has_budget(cleaver)) continue;
        rx.kind = DiagramReaction::Kind::Cleave;
        rx.participants = {cleaver};
        rx.cleave_target = cleavable[draw(rng, cleavable.size())];
        spend(cleaver);
        break;
      }
      case 4: {
        NamePtr a = pick();
        if (!has_budget(a)) continue;
        rx.kind = chance(rng, 50) ? DiagramReaction::Kind::Convert : DiagramReaction::Kind::Produce;
        rx.participants = {a};
        std::size_t np = draw(rng, 3);
        for (std::size_t k = 0; k < np; ++k)
          rx.products.emplace_back(pick(), 1 + static_cast<int>(draw(rng, 2)));
        if (rx.kind == DiagramReaction::Kind::Produce && rx.products.empty())
          rx.products.emplace_back(pick(), 1);
        spend(a);
        break;
      }
      default: {
        NamePtr a = pick();
        if (!has_budget(a)) continue;
        rx.kind = DiagramReaction::Kind::Degrade;
        rx.participants = {a};
        spend(a);
        break;
      }
    }
    if (chance(rng, 20)) {
      std::size_t np = draw(rng, 2);
      for (std::size_t k = 0; k < np; ++k) rx.promoters.insert(pick());
      std::size_t ni = draw(rng, 2);
      for (std::size_t k = 0; k < ni; ++k) rx.inhibitors.insert(pick());
    }
    spec.reactions.push_back(std::move(rx));
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Congruence-preserving shuffles
// ---------------------------------------------------------------------------

namespace {

using CapPred = std::function<bool(const CapPtr&)>;
using CapEdit = std::function<CapPtr(const CapPtr&)>;
using InnerPred = std::function<bool(const InnerPtr&)>;
using InnerEdit = std::function<InnerPtr(const InnerPtr&)>;

// Counts eligible nodes and rewrites the k-th one; counter and rewriter use
// the same predicates and the same traversal.
struct NodeEditor {
  CapPred match_cap;
  CapEdit edit_cap;
  InnerPred match_inner;
  InnerEdit edit_inner;
  long countdown = -1;  // negative while counting
  long total = 0;

  CapPtr cap(const CapPtr& c) {
    if (match_cap && match_cap(c)) {
      ++total;
      if (countdown >= 0 && countdown-- == 0) return edit_cap(c);
    }
    if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) return cap_rec(rec->var, cap(rec->body));
    if (std::holds_alternative<Capability::Var>(c->node)) return c;
    std::vector<BasicCap> out;
    for (const auto& g : std::get<Capability::Sum>(c->node).summands)
      out.push_back(BasicCap{g.promoters, g.inhibitors, op(g.op)});
    return cap_sum(std::move(out));
  }

  CapOp op(const CapOp& o) {
    if (const auto* b = std::get_if<NonCovBind>(&o)) return NonCovBind{b->partner, cap(b->cont)};
    if (const auto* cb = std::get_if<CovBind>(&o)) return CovBind{cb->partner, cap(cb->cont)};
    if (const auto* m = std::get_if<CovMod>(&o)) return CovMod{m->modtype, cap(m->cont)};
    if (const auto* cl = std::get_if<Cleave>(&o)) return *cl;
    if (const auto* cv = std::get_if<Convert>(&o)) return Convert{process(cv->products)};
    return Produce{process(std::get<Produce>(o).products)};
  }

  SpeciesPtr species(const SpeciesPtr& s) {
    CapPtr caps = cap(s->caps);
    InnerPtr body = s->body;
    switch (body->kind) {
      case InnerSpecies::Kind::Elementary:
        break;
      case InnerSpecies::Kind::CovalentMod:
        body = inner_mod(body->ident, species(body->left));
        break;
      case InnerSpecies::Kind::NonCovalent:
        body = inner_noncov(species(body->left), species(body->right));
        break;
      case InnerSpecies::Kind::CovalentBond:
        body = inner_bond(species(body->left), species(body->right));
        break;
    }
    if (match_inner && match_inner(body)) {
      ++total;
      if (countdown >= 0 && countdown-- == 0) body = edit_inner(body);
    }
    return make_species(std::move(caps), std::move(body));
  }

  Process process(const Process& p) {
    Process out;
    for (const auto& s : p.molecules) out.molecules.push_back(species(s));
    return out;
  }
};

Process edit_random_node(std::mt19937_64& rng, const Process& p, CapPred match_cap, CapEdit edit_cap,
                         InnerPred match_inner, InnerEdit edit_inner) {
  NodeEditor counter{match_cap, edit_cap, match_inner, edit_inner, -1, 0};
  counter.process(p);
  if (counter.total == 0) return p;
  NodeEditor editor{std::move(match_cap), std::move(edit_cap), std::move(match_inner),
                    std::move(edit_inner),
                    static_cast<long>(draw(rng, static_cast<std::size_t>(counter.total))), 0};
  return editor.process(p);
}

Process alpha_rename_all(const Process& p, std::mt19937_64& rng) {
  struct Renamer {
    std::mt19937_64& rng;
    std::vector<std::pair<std::string, std::string>> env;
    int counter = 0;

    CapPtr cap(const CapPtr& c) {
      if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
        std::string fresh = "a" + std::to_string(counter++) + "_" + std::to_string(draw(rng, 1000));
        env.emplace_back(rec->var, fresh);
        CapPtr body = cap(rec->body);
        env.pop_back();
        return cap_rec(std::move(fresh), std::move(body));
      }
      if (const auto* var = std::get_if<Capability::Var>(&c->node)) {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == var->name) return cap_var(it->second);
        return c;
      }
      std::vector<BasicCap> out;
      for (const auto& g : std::get<Capability::Sum>(c->node).summands)
        out.push_back(BasicCap{g.promoters, g.inhibitors, op(g.op)});
      return cap_sum(std::move(out));
    }
    CapOp op(const CapOp& o) {
      if (const auto* b = std::get_if<NonCovBind>(&o)) return NonCovBind{b->partner, cap(b->cont)};
      if (const auto* cb = std::get_if<CovBind>(&o)) return CovBind{cb->partner, cap(cb->cont)};
      if (const auto* m = std::get_if<CovMod>(&o)) return CovMod{m->modtype, cap(m->cont)};
      if (const auto* cl = std::get_if<Cleave>(&o)) return *cl;
      if (const auto* cv = std::get_if<Convert>(&o)) return Convert{process(cv->products)};
      return Produce{process(std::get<Produce>(o).products)};
    }
    SpeciesPtr species(const SpeciesPtr& s) {
      CapPtr caps = cap(s->caps);
      InnerPtr body = s->body;
      switch (body->kind) {
        case InnerSpecies::Kind::Elementary:
          break;
        case InnerSpecies::Kind::CovalentMod:
          body = inner_mod(body->ident, species(body->left));
          break;
        case InnerSpecies::Kind::NonCovalent:
          body = inner_noncov(species(body->left), species(body->right));
          break;
        case InnerSpecies::Kind::CovalentBond:
          body = inner_bond(species(body->left), species(body->right));
          break;
      }
      return make_species(std::move(caps), std::move(body));
    }
    Process process(const Process& p) {
      Process out;
      for (const auto& s : p.molecules) out.molecules.push_back(species(s));
      return out;
    }
  };
  Renamer renamer{rng, {}, 0};
  return renamer.process(p);
}

}  // namespace

Process shuffled(std::mt19937_64& rng, const Process& p, Shuffle kind) {
  switch (kind) {
    case Shuffle::ParOrder: {
      Process out = p;
      for (std::size_t i = out.molecules.size(); i > 1; --i)
        std::swap(out.molecules[i - 1], out.molecules[draw(rng, i)]);
      return out;
    }
    case Shuffle::SumOrder: {
      auto* rng_ptr = &rng;
      return edit_random_node(
          rng, p,
          [](const CapPtr& c) {
            const auto* sum = std::get_if<Capability::Sum>(&c->node);
            return sum && sum->summands.size() >= 2;
          },
          [rng_ptr](const CapPtr& c) {
            auto summands = std::get<Capability::Sum>(c->node).summands;
            for (std::size_t i = summands.size(); i > 1; --i)
              std::swap(summands[i - 1], summands[draw(*rng_ptr, i)]);
            return cap_sum(std::move(summands));
          },
          nullptr, nullptr);
    }
    case Shuffle::SumDup: {
      auto* rng_ptr = &rng;
      return edit_random_node(
          rng, p,
          [](const CapPtr& c) {
            const auto* sum = std::get_if<Capability::Sum>(&c->node);
            return sum && !sum->summands.empty();
          },
          [rng_ptr](const CapPtr& c) {
            auto summands = std::get<Capability::Sum>(c->node).summands;
            summands.push_back(summands[draw(*rng_ptr, summands.size())]);
            return cap_sum(std::move(summands));
          },
          nullptr, nullptr);
    }
    case Shuffle::RecUnfold:
      return edit_random_node(
          rng, p, [](const CapPtr& c) { return std::holds_alternative<Capability::Rec>(c->node); },
          [](const CapPtr& c) { return unfold_rec(c); }, nullptr, nullptr);
    case Shuffle::CompoundSwap:
      return edit_random_node(
          rng, p, nullptr, nullptr,
          [](const InnerPtr& b) {
            return b->kind == InnerSpecies::Kind::NonCovalent ||
                   b->kind == InnerSpecies::Kind::CovalentBond;
          },
          [](const InnerPtr& b) {
            return b->kind == InnerSpecies::Kind::NonCovalent ? inner_noncov(b->right, b->left)
                                                              : inner_bond(b->right, b->left);
          });
    case Shuffle::AlphaRename:
      return alpha_rename_all(p, rng);
  }
  return p;
}

}  // namespace mimc
