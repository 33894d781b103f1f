#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

namespace mimc {

// ---------------------------------------------------------------------------
// Canonicalization (laws 1-4: parallel ACU, compound commutativity, sum ACUI,
// canonical bound-variable renaming)
// ---------------------------------------------------------------------------

namespace {

// Bound variables are renamed to x<d> where d is the number of enclosing rec
// binders; the result is alpha-normal and depends only on term structure.
struct CanonCtx {
  std::map<std::string, int> env;
  int depth = 0;
};

NameSet canon_nameset(const NameSet& ns) {
  std::vector<NamePtr> names;
  names.reserve(ns.size());
  for (const auto& n : ns) names.push_back(canonical_name(n));
  return NameSet(std::move(names));
}

CapPtr canon_cap_impl(const CapPtr& c, CanonCtx& ctx);
SpeciesPtr canon_species_impl(const SpeciesPtr& s, CanonCtx& ctx);

Process canon_process_impl(const Process& p, CanonCtx& ctx) {
  Process out;
  out.molecules.reserve(p.molecules.size());
  for (const auto& s : p.molecules) out.molecules.push_back(canon_species_impl(s, ctx));
  std::sort(out.molecules.begin(), out.molecules.end(),
            [](const SpeciesPtr& a, const SpeciesPtr& b) { return compare(a, b) < 0; });
  return out;
}

CapOp canon_op(const CapOp& op, CanonCtx& ctx) {
  if (const auto* b = std::get_if<NonCovBind>(&op))
    return NonCovBind{canonical_name(b->partner), canon_cap_impl(b->cont, ctx)};
  if (const auto* cb = std::get_if<CovBind>(&op))
    return CovBind{canonical_name(cb->partner), canon_cap_impl(cb->cont, ctx)};
  if (const auto* m = std::get_if<CovMod>(&op)) return CovMod{m->modtype, canon_cap_impl(m->cont, ctx)};
  if (const auto* cl = std::get_if<Cleave>(&op)) return Cleave{canonical_name(cl->target)};
  if (const auto* cv = std::get_if<Convert>(&op)) return Convert{canon_process_impl(cv->products, ctx)};
  return Produce{canon_process_impl(std::get<Produce>(op).products, ctx)};
}

CapPtr canon_cap_impl(const CapPtr& c, CanonCtx& ctx) {
  if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
    std::string name = "x" + std::to_string(ctx.depth);
    auto it = ctx.env.find(rec->var);
    std::optional<int> shadowed;
    if (it != ctx.env.end()) shadowed = it->second;
    ctx.env[rec->var] = ctx.depth;
    ++ctx.depth;
    CapPtr body = canon_cap_impl(rec->body, ctx);
    --ctx.depth;
    if (shadowed)
      ctx.env[rec->var] = *shadowed;
    else
      ctx.env.erase(rec->var);
    return cap_rec(std::move(name), std::move(body));
  }
  if (const auto* var = std::get_if<Capability::Var>(&c->node)) {
    auto it = ctx.env.find(var->name);
    if (it == ctx.env.end()) throw TermError("free capability variable: " + var->name);
    return cap_var("x" + std::to_string(it->second));
  }
  std::vector<BasicCap> summands;
  summands.reserve(std::get<Capability::Sum>(c->node).summands.size());
  for (const auto& g : std::get<Capability::Sum>(c->node).summands)
    summands.push_back(BasicCap{canon_nameset(g.promoters), canon_nameset(g.inhibitors), canon_op(g.op, ctx)});
  std::sort(summands.begin(), summands.end(),
            [](const BasicCap& a, const BasicCap& b) { return compare(a, b) < 0; });
  summands.erase(std::unique(summands.begin(), summands.end(),
                             [](const BasicCap& a, const BasicCap& b) { return compare(a, b) == 0; }),
                 summands.end());
  return cap_sum(std::move(summands));
}

SpeciesPtr canon_species_impl(const SpeciesPtr& s, CanonCtx& ctx) {
  CapPtr caps = canon_cap_impl(s->caps, ctx);
  InnerPtr body = s->body;
  switch (body->kind) {
    case InnerSpecies::Kind::Elementary:
      break;
    case InnerSpecies::Kind::CovalentMod:
      body = inner_mod(body->ident, canon_species_impl(body->left, ctx));
      break;
    case InnerSpecies::Kind::NonCovalent:
    case InnerSpecies::Kind::CovalentBond: {
      SpeciesPtr l = canon_species_impl(body->left, ctx);
      SpeciesPtr r = canon_species_impl(body->right, ctx);
      if (compare(r, l) < 0) std::swap(l, r);
      body = body->kind == InnerSpecies::Kind::NonCovalent ? inner_noncov(l, r) : inner_bond(l, r);
      break;
    }
  }
  return make_species(std::move(caps), std::move(body));
}

}  // namespace

Process canonicalize(const Process& p) {
  CanonCtx ctx;
  return canon_process_impl(p, ctx);
}

SpeciesPtr canonicalize_species(const SpeciesPtr& s) {
  CanonCtx ctx;
  return canon_species_impl(s, ctx);
}

CapPtr canonicalize_cap(const CapPtr& c) {
  CanonCtx ctx;
  return canon_cap_impl(c, ctx);
}

std::vector<BasicCap> head_summands(const CapPtr& c) {
  CapPtr cur = canonicalize_cap(c);
  for (int steps = 0; steps < 100000; ++steps) {
    if (const auto* sum = std::get_if<Capability::Sum>(&cur->node)) return sum->summands;
    if (std::holds_alternative<Capability::Var>(cur->node))
      throw TermError("head_summands: open capability");
    cur = canonicalize_cap(unfold_rec(cur));
  }
  throw TermError("head_summands: recursion does not reach a summand form");
}

// ---------------------------------------------------------------------------
// Equality up to structural congruence.
//
// Rec capabilities denote regular trees, so equality is decided by
// bisimulation: pairs under test are assumed equal, unfolded to head summand
// form and matched componentwise. Assumption sets grow only along successful
// branches; trial copies are discarded on mismatch.
// ---------------------------------------------------------------------------

namespace {

using PairSet = std::set<std::pair<std::string, std::string>>;

bool cap_bisim(const CapPtr& a, const CapPtr& b, PairSet& assumed);
bool species_bisim(const SpeciesPtr& a, const SpeciesPtr& b, PairSet& assumed);

bool process_bisim_match(const std::vector<SpeciesPtr>& as, std::vector<const SpeciesPtr*>& bs,
                         std::size_t i, PairSet& assumed) {
  if (i == as.size()) return true;
  for (auto& slot : bs) {
    if (!slot) continue;
    const SpeciesPtr* candidate = slot;
    PairSet trial = assumed;
    if (species_bisim(as[i], *candidate, trial)) {
      slot = nullptr;
      PairSet saved = std::move(assumed);
      assumed = std::move(trial);
      if (process_bisim_match(as, bs, i + 1, assumed)) return true;
      assumed = std::move(saved);
      slot = candidate;
    }
  }
  return false;
}

bool process_bisim(const Process& a, const Process& b, PairSet& assumed) {
  if (a.molecules.size() != b.molecules.size()) return false;
  // Cancel print-identical molecules first; only the remainder needs matching.
  std::multiset<std::string> keys_b;
  for (const auto& s : b.molecules) keys_b.insert(print_species_raw(s));
  std::vector<SpeciesPtr> rest_a;
  for (const auto& s : a.molecules) {
    auto it = keys_b.find(print_species_raw(s));
    if (it != keys_b.end())
      keys_b.erase(it);
    else
      rest_a.push_back(s);
  }
  std::vector<SpeciesPtr> rest_b;
  std::multiset<std::string> keys_a;
  for (const auto& s : a.molecules) keys_a.insert(print_species_raw(s));
  for (const auto& s : b.molecules) {
    auto it = keys_a.find(print_species_raw(s));
    if (it != keys_a.end())
      keys_a.erase(it);
    else
      rest_b.push_back(s);
  }
  if (rest_a.size() != rest_b.size()) return false;
  if (rest_a.empty()) return true;
  std::vector<const SpeciesPtr*> slots;
  slots.reserve(rest_b.size());
  for (const auto& s : rest_b) slots.push_back(&s);
  return process_bisim_match(rest_a, slots, 0, assumed);
}

bool gamma_bisim(const BasicCap& a, const BasicCap& b, PairSet& assumed) {
  if (a.op.index() != b.op.index()) return false;
  if (compare(a.promoters, b.promoters) != 0) return false;
  if (compare(a.inhibitors, b.inhibitors) != 0) return false;
  if (const auto* x = std::get_if<NonCovBind>(&a.op)) {
    const auto& y = std::get<NonCovBind>(b.op);
    return name_equal(x->partner, y.partner) && cap_bisim(x->cont, y.cont, assumed);
  }
  if (const auto* x = std::get_if<CovBind>(&a.op)) {
    const auto& y = std::get<CovBind>(b.op);
    return name_equal(x->partner, y.partner) && cap_bisim(x->cont, y.cont, assumed);
  }
  if (const auto* x = std::get_if<CovMod>(&a.op)) {
    const auto& y = std::get<CovMod>(b.op);
    return x->modtype == y.modtype && cap_bisim(x->cont, y.cont, assumed);
  }
  if (const auto* x = std::get_if<Cleave>(&a.op)) {
    return name_equal(x->target, std::get<Cleave>(b.op).target);
  }
  if (const auto* x = std::get_if<Convert>(&a.op)) {
    return process_bisim(x->products, std::get<Convert>(b.op).products, assumed);
  }
  return process_bisim(std::get<Produce>(a.op).products, std::get<Produce>(b.op).products, assumed);
}

bool gamma_in(const BasicCap& g, const std::vector<BasicCap>& sum, PairSet& assumed) {
  for (const auto& d : sum) {
    PairSet trial = assumed;
    if (gamma_bisim(g, d, trial)) {
      assumed = std::move(trial);
      return true;
    }
  }
  return false;
}

bool sum_bisim(const std::vector<BasicCap>& a, const std::vector<BasicCap>& b, PairSet& assumed) {
  for (const auto& g : a)
    if (!gamma_in(g, b, assumed)) return false;
  for (const auto& g : b)
    if (!gamma_in(g, a, assumed)) return false;
  return true;
}

bool cap_bisim(const CapPtr& a, const CapPtr& b, PairSet& assumed) {
  std::string ka = print_cap_raw(a);
  std::string kb = print_cap_raw(b);
  if (ka == kb) return true;
  auto key = ka < kb ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
  if (assumed.count(key)) return true;
  assumed.insert(std::move(key));
  return sum_bisim(head_summands(a), head_summands(b), assumed);
}

bool species_bisim(const SpeciesPtr& a, const SpeciesPtr& b, PairSet& assumed) {
  if (a->body->kind != b->body->kind) return false;
  switch (a->body->kind) {
    case InnerSpecies::Kind::Elementary:
      if (a->body->ident != b->body->ident) return false;
      break;
    case InnerSpecies::Kind::CovalentMod:
      if (a->body->ident != b->body->ident) return false;
      if (!species_bisim(a->body->left, b->body->left, assumed)) return false;
      break;
    case InnerSpecies::Kind::NonCovalent:
    case InnerSpecies::Kind::CovalentBond: {
      PairSet trial = assumed;
      if (species_bisim(a->body->left, b->body->left, trial) &&
          species_bisim(a->body->right, b->body->right, trial)) {
        assumed = std::move(trial);
        break;
      }
      trial = assumed;
      if (species_bisim(a->body->left, b->body->right, trial) &&
          species_bisim(a->body->right, b->body->left, trial)) {
        assumed = std::move(trial);
        break;
      }
      return false;
    }
  }
  return cap_bisim(a->caps, b->caps, assumed);
}

}  // namespace

bool caps_equal(const CapPtr& a, const CapPtr& b) {
  PairSet assumed;
  return cap_bisim(canonicalize_cap(a), canonicalize_cap(b), assumed);
}

bool species_equal(const SpeciesPtr& a, const SpeciesPtr& b) {
  PairSet assumed;
  return species_bisim(canonicalize_species(a), canonicalize_species(b), assumed);
}

bool process_equal(const Process& a, const Process& b) {
  Process ca = canonicalize(a);
  Process cb = canonicalize(b);
  if (print_process_raw(ca) == print_process_raw(cb)) return true;
  PairSet assumed;
  return process_bisim(ca, cb, assumed);
}

}  // namespace mimc
