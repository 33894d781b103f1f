#include "mimc/term.hpp"

#include <algorithm>
#include <set>

namespace mimc {

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

NamePtr name_elem(std::string ident) {
  return std::make_shared<Name>(Name{Name::Kind::Elementary, std::move(ident), nullptr, nullptr});
}

NamePtr name_noncov(NamePtr a, NamePtr b) {
  return std::make_shared<Name>(Name{Name::Kind::NonCovalent, {}, std::move(a), std::move(b)});
}

NamePtr name_mod(std::string modtype, NamePtr inner) {
  return std::make_shared<Name>(Name{Name::Kind::CovalentMod, std::move(modtype), std::move(inner), nullptr});
}

NamePtr name_bond(NamePtr a, NamePtr b) {
  return std::make_shared<Name>(Name{Name::Kind::CovalentBond, {}, std::move(a), std::move(b)});
}

CapPtr cap_rec(std::string var, CapPtr body) {
  return std::make_shared<Capability>(Capability{Capability::Rec{std::move(var), std::move(body)}});
}

CapPtr cap_var(std::string name) {
  return std::make_shared<Capability>(Capability{Capability::Var{std::move(name)}});
}

CapPtr cap_sum(std::vector<BasicCap> summands) {
  return std::make_shared<Capability>(Capability{Capability::Sum{std::move(summands)}});
}

const CapPtr& cap_empty() {
  static const CapPtr empty = cap_sum({});
  return empty;
}

InnerPtr inner_elem(std::string ident) {
  return std::make_shared<InnerSpecies>(
      InnerSpecies{InnerSpecies::Kind::Elementary, std::move(ident), nullptr, nullptr});
}

InnerPtr inner_noncov(SpeciesPtr a, SpeciesPtr b) {
  return std::make_shared<InnerSpecies>(
      InnerSpecies{InnerSpecies::Kind::NonCovalent, {}, std::move(a), std::move(b)});
}

InnerPtr inner_mod(std::string modtype, SpeciesPtr inner) {
  return std::make_shared<InnerSpecies>(
      InnerSpecies{InnerSpecies::Kind::CovalentMod, std::move(modtype), std::move(inner), nullptr});
}

InnerPtr inner_bond(SpeciesPtr a, SpeciesPtr b) {
  return std::make_shared<InnerSpecies>(
      InnerSpecies{InnerSpecies::Kind::CovalentBond, {}, std::move(a), std::move(b)});
}

SpeciesPtr make_species(CapPtr caps, InnerPtr body) {
  return std::make_shared<Species>(Species{std::move(caps), std::move(body)});
}

SpeciesPtr species_from_name(const NamePtr& n) {
  switch (n->kind) {
    case Name::Kind::Elementary:
      return make_species(cap_empty(), inner_elem(n->ident));
    case Name::Kind::NonCovalent:
      return make_species(cap_empty(), inner_noncov(species_from_name(n->left), species_from_name(n->right)));
    case Name::Kind::CovalentMod:
      return make_species(cap_empty(), inner_mod(n->ident, species_from_name(n->left)));
    case Name::Kind::CovalentBond:
      return make_species(cap_empty(), inner_bond(species_from_name(n->left), species_from_name(n->right)));
  }
  throw TermError("corrupt name node");
}

// ---------------------------------------------------------------------------
// Order on names, name sets
// ---------------------------------------------------------------------------

namespace {

template <typename T>
int cmp_scalar(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare(const Name& a, const Name& b) {
  if (int c = cmp_scalar(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  switch (a.kind) {
    case Name::Kind::Elementary:
      return a.ident.compare(b.ident);
    case Name::Kind::CovalentMod:
      if (int c = a.ident.compare(b.ident)) return c;
      return compare(a.left, b.left);
    case Name::Kind::NonCovalent:
    case Name::Kind::CovalentBond:
      if (int c = compare(a.left, b.left)) return c;
      return compare(a.right, b.right);
  }
  return 0;
}

int compare(const NamePtr& a, const NamePtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

NamePtr canonical_name(const NamePtr& n) {
  switch (n->kind) {
    case Name::Kind::Elementary:
      return n;
    case Name::Kind::CovalentMod: {
      return name_mod(n->ident, canonical_name(n->left));
    }
    case Name::Kind::NonCovalent:
    case Name::Kind::CovalentBond: {
      NamePtr l = canonical_name(n->left);
      NamePtr r = canonical_name(n->right);
      if (compare(r, l) < 0) std::swap(l, r);
      return n->kind == Name::Kind::NonCovalent ? name_noncov(l, r) : name_bond(l, r);
    }
  }
  throw TermError("corrupt name node");
}

NameSet::NameSet(std::vector<NamePtr> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end(), [](const NamePtr& a, const NamePtr& b) { return compare(a, b) < 0; });
  names_.erase(std::unique(names_.begin(), names_.end(),
                           [](const NamePtr& a, const NamePtr& b) { return compare(a, b) == 0; }),
               names_.end());
}

void NameSet::insert(const NamePtr& n) {
  auto it = std::lower_bound(names_.begin(), names_.end(), n,
                             [](const NamePtr& a, const NamePtr& b) { return compare(a, b) < 0; });
  if (it != names_.end() && compare(*it, n) == 0) return;
  names_.insert(it, n);
}

void NameSet::erase(const NamePtr& n) {
  auto it = std::lower_bound(names_.begin(), names_.end(), n,
                             [](const NamePtr& a, const NamePtr& b) { return compare(a, b) < 0; });
  if (it != names_.end() && compare(*it, n) == 0) names_.erase(it);
}

bool NameSet::contains(const NamePtr& n) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), n,
                             [](const NamePtr& a, const NamePtr& b) { return compare(a, b) < 0; });
  return it != names_.end() && compare(*it, n) == 0;
}

int compare(const NameSet& a, const NameSet& b) {
  if (int c = cmp_scalar(a.names_.size(), b.names_.size())) return c;
  for (std::size_t i = 0; i < a.names_.size(); ++i)
    if (int c = compare(a.names_[i], b.names_[i])) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Stripping
// ---------------------------------------------------------------------------

NamePtr strip_inner(const InnerPtr& body) {
  switch (body->kind) {
    case InnerSpecies::Kind::Elementary:
      return name_elem(body->ident);
    case InnerSpecies::Kind::NonCovalent:
      return canonical_name(name_noncov(strip_inner(body->left->body), strip_inner(body->right->body)));
    case InnerSpecies::Kind::CovalentMod:
      return canonical_name(name_mod(body->ident, strip_inner(body->left->body)));
    case InnerSpecies::Kind::CovalentBond:
      return canonical_name(name_bond(strip_inner(body->left->body), strip_inner(body->right->body)));
  }
  throw TermError("corrupt species node");
}

NamePtr strip_species(const SpeciesPtr& s) { return strip_inner(s->body); }

NameSet strip_process(const Process& p) {
  NameSet out;
  for (const auto& s : p.molecules) out.insert(strip_species(s));
  return out;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace {

void free_vars_cap(const CapPtr& c, std::set<std::string>& bound, std::vector<std::string>& out);
void free_vars_species(const SpeciesPtr& s, std::set<std::string>& bound, std::vector<std::string>& out);

void free_vars_process(const Process& p, std::set<std::string>& bound, std::vector<std::string>& out) {
  for (const auto& s : p.molecules) free_vars_species(s, bound, out);
}

void free_vars_op(const CapOp& op, std::set<std::string>& bound, std::vector<std::string>& out) {
  if (const auto* b = std::get_if<NonCovBind>(&op)) {
    free_vars_cap(b->cont, bound, out);
  } else if (const auto* cb = std::get_if<CovBind>(&op)) {
    free_vars_cap(cb->cont, bound, out);
  } else if (const auto* m = std::get_if<CovMod>(&op)) {
    free_vars_cap(m->cont, bound, out);
  } else if (const auto* cv = std::get_if<Convert>(&op)) {
    free_vars_process(cv->products, bound, out);
  } else if (const auto* pr = std::get_if<Produce>(&op)) {
    free_vars_process(pr->products, bound, out);
  }
}

void free_vars_cap(const CapPtr& c, std::set<std::string>& bound, std::vector<std::string>& out) {
  if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
    bool inserted = bound.insert(rec->var).second;
    free_vars_cap(rec->body, bound, out);
    if (inserted) bound.erase(rec->var);
  } else if (const auto* var = std::get_if<Capability::Var>(&c->node)) {
    if (!bound.count(var->name)) out.push_back(var->name);
  } else {
    for (const auto& g : std::get<Capability::Sum>(c->node).summands) free_vars_op(g.op, bound, out);
  }
}

void free_vars_species(const SpeciesPtr& s, std::set<std::string>& bound, std::vector<std::string>& out) {
  free_vars_cap(s->caps, bound, out);
  if (s->body->left) free_vars_species(s->body->left, bound, out);
  if (s->body->right) free_vars_species(s->body->right, bound, out);
}

}  // namespace

void collect_free_vars(const CapPtr& c, std::vector<std::string>& out) {
  std::set<std::string> bound;
  free_vars_cap(c, bound, out);
}

bool is_closed_cap(const CapPtr& c) {
  std::vector<std::string> fv;
  collect_free_vars(c, fv);
  return fv.empty();
}

bool is_closed(const Process& p) {
  std::set<std::string> bound;
  std::vector<std::string> fv;
  free_vars_process(p, bound, fv);
  return fv.empty();
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

struct Subst {
  const std::string& var;
  const CapPtr& repl;
  std::vector<std::string> repl_free;
  int fresh_counter = 0;

  std::string fresh(const CapPtr& body) {
    std::vector<std::string> avoid = repl_free;
    collect_free_vars(body, avoid);
    for (;;) {
      std::string cand = "s" + std::to_string(fresh_counter++);
      if (cand != var && std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) return cand;
    }
  }

  CapPtr cap(const CapPtr& c);
  SpeciesPtr species(const SpeciesPtr& s);
  Process process(const Process& p);
  CapOp op(const CapOp& o);
};

CapPtr Subst::cap(const CapPtr& c) {
  if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
    if (rec->var == var) return c;  // shadowed
    if (std::find(repl_free.begin(), repl_free.end(), rec->var) != repl_free.end()) {
      std::string nv = fresh(rec->body);
      CapPtr nv_var = cap_var(nv);
      Subst rename{rec->var, nv_var, {nv}, 0};
      return cap_rec(nv, cap(rename.cap(rec->body)));
    }
    return cap_rec(rec->var, cap(rec->body));
  }
  if (const auto* v = std::get_if<Capability::Var>(&c->node)) {
    return v->name == var ? repl : c;
  }
  std::vector<BasicCap> out;
  out.reserve(std::get<Capability::Sum>(c->node).summands.size());
  for (const auto& g : std::get<Capability::Sum>(c->node).summands)
    out.push_back(BasicCap{g.promoters, g.inhibitors, op(g.op)});
  return cap_sum(std::move(out));
}

CapOp Subst::op(const CapOp& o) {
  if (const auto* b = std::get_if<NonCovBind>(&o)) return NonCovBind{b->partner, cap(b->cont)};
  if (const auto* cb = std::get_if<CovBind>(&o)) return CovBind{cb->partner, cap(cb->cont)};
  if (const auto* m = std::get_if<CovMod>(&o)) return CovMod{m->modtype, cap(m->cont)};
  if (const auto* cl = std::get_if<Cleave>(&o)) return *cl;
  if (const auto* cv = std::get_if<Convert>(&o)) return Convert{process(cv->products)};
  return Produce{process(std::get<Produce>(o).products)};
}

SpeciesPtr Subst::species(const SpeciesPtr& s) {
  InnerPtr body = s->body;
  switch (body->kind) {
    case InnerSpecies::Kind::Elementary:
      break;
    case InnerSpecies::Kind::NonCovalent:
      body = inner_noncov(species(body->left), species(body->right));
      break;
    case InnerSpecies::Kind::CovalentMod:
      body = inner_mod(body->ident, species(body->left));
      break;
    case InnerSpecies::Kind::CovalentBond:
      body = inner_bond(species(body->left), species(body->right));
      break;
  }
  return make_species(cap(s->caps), body);
}

Process Subst::process(const Process& p) {
  Process out;
  out.molecules.reserve(p.molecules.size());
  for (const auto& s : p.molecules) out.molecules.push_back(species(s));
  return out;
}

}  // namespace

CapPtr substitute(const CapPtr& body, const std::string& var, const CapPtr& repl) {
  Subst st{var, repl, {}, 0};
  collect_free_vars(repl, st.repl_free);
  return st.cap(body);
}

CapPtr unfold_rec(const CapPtr& rec) {
  const auto* r = std::get_if<Capability::Rec>(&rec->node);
  if (!r) throw TermError("unfold_rec: not a rec capability");
  return substitute(r->body, r->var, rec);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void check_contractive(const Capability::Rec& rec) {
  std::set<std::string> spine{rec.var};
  const Capability* cur = rec.body.get();
  while (const auto* r = std::get_if<Capability::Rec>(&cur->node)) {
    spine.insert(r->var);
    cur = r->body.get();
  }
  if (const auto* v = std::get_if<Capability::Var>(&cur->node)) {
    if (spine.count(v->name)) throw TermError("non-contractive recursion: rec " + rec.var);
  }
}

void validate_cap(const CapPtr& c, std::set<std::string>& scope);
void validate_species(const SpeciesPtr& s, std::set<std::string>& scope);

void validate_op(const CapOp& op, std::set<std::string>& scope) {
  if (const auto* b = std::get_if<NonCovBind>(&op)) {
    validate_cap(b->cont, scope);
  } else if (const auto* cb = std::get_if<CovBind>(&op)) {
    validate_cap(cb->cont, scope);
  } else if (const auto* m = std::get_if<CovMod>(&op)) {
    validate_cap(m->cont, scope);
  } else if (const auto* cl = std::get_if<Cleave>(&op)) {
    if (cl->target->kind != Name::Kind::CovalentBond && cl->target->kind != Name::Kind::CovalentMod)
      throw TermError("cleave target must be a covalent bond or modification");
  } else if (const auto* cv = std::get_if<Convert>(&op)) {
    for (const auto& s : cv->products.molecules) validate_species(s, scope);
  } else {
    for (const auto& s : std::get<Produce>(op).products.molecules) validate_species(s, scope);
  }
}

void validate_cap(const CapPtr& c, std::set<std::string>& scope) {
  if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
    check_contractive(*rec);
    bool inserted = scope.insert(rec->var).second;
    validate_cap(rec->body, scope);
    if (inserted) scope.erase(rec->var);
  } else if (const auto* var = std::get_if<Capability::Var>(&c->node)) {
    if (!scope.count(var->name)) throw TermError("unbound capability variable: " + var->name);
  } else {
    for (const auto& g : std::get<Capability::Sum>(c->node).summands) validate_op(g.op, scope);
  }
}

void validate_species(const SpeciesPtr& s, std::set<std::string>& scope) {
  validate_cap(s->caps, scope);
  if (s->body->left) validate_species(s->body->left, scope);
  if (s->body->right) validate_species(s->body->right, scope);
}

}  // namespace

void validate_process(const Process& p) {
  std::set<std::string> scope;
  for (const auto& s : p.molecules) validate_species(s, scope);
}

// ---------------------------------------------------------------------------
// Total order on terms
// ---------------------------------------------------------------------------

int compare(const CapPtr& a, const CapPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_scalar(a->node.index(), b->node.index())) return c;
  if (const auto* ra = std::get_if<Capability::Rec>(&a->node)) {
    const auto& rb = std::get<Capability::Rec>(b->node);
    if (int c = ra->var.compare(rb.var)) return c;
    return compare(ra->body, rb.body);
  }
  if (const auto* va = std::get_if<Capability::Var>(&a->node)) {
    return va->name.compare(std::get<Capability::Var>(b->node).name);
  }
  const auto& sa = std::get<Capability::Sum>(a->node).summands;
  const auto& sb = std::get<Capability::Sum>(b->node).summands;
  if (int c = cmp_scalar(sa.size(), sb.size())) return c;
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (int c = compare(sa[i], sb[i])) return c;
  return 0;
}

namespace {

int compare_op(const CapOp& a, const CapOp& b) {
  if (int c = cmp_scalar(a.index(), b.index())) return c;
  if (const auto* x = std::get_if<NonCovBind>(&a)) {
    const auto& y = std::get<NonCovBind>(b);
    if (int c = compare(x->partner, y.partner)) return c;
    return compare(x->cont, y.cont);
  }
  if (const auto* x = std::get_if<CovBind>(&a)) {
    const auto& y = std::get<CovBind>(b);
    if (int c = compare(x->partner, y.partner)) return c;
    return compare(x->cont, y.cont);
  }
  if (const auto* x = std::get_if<CovMod>(&a)) {
    const auto& y = std::get<CovMod>(b);
    if (int c = x->modtype.compare(y.modtype)) return c;
    return compare(x->cont, y.cont);
  }
  if (const auto* x = std::get_if<Cleave>(&a)) {
    return compare(x->target, std::get<Cleave>(b).target);
  }
  if (const auto* x = std::get_if<Convert>(&a)) {
    return compare(x->products, std::get<Convert>(b).products);
  }
  return compare(std::get<Produce>(a).products, std::get<Produce>(b).products);
}

}  // namespace

int compare(const BasicCap& a, const BasicCap& b) {
  if (int c = compare_op(a.op, b.op)) return c;
  if (int c = compare(a.promoters, b.promoters)) return c;
  return compare(a.inhibitors, b.inhibitors);
}

int compare(const InnerPtr& a, const InnerPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_scalar(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case InnerSpecies::Kind::Elementary:
      return a->ident.compare(b->ident);
    case InnerSpecies::Kind::CovalentMod:
      if (int c = a->ident.compare(b->ident)) return c;
      return compare(a->left, b->left);
    case InnerSpecies::Kind::NonCovalent:
    case InnerSpecies::Kind::CovalentBond:
      if (int c = compare(a->left, b->left)) return c;
      return compare(a->right, b->right);
  }
  return 0;
}

int compare(const SpeciesPtr& a, const SpeciesPtr& b) {
  if (a == b) return 0;
  if (int c = compare(a->body, b->body)) return c;
  return compare(a->caps, b->caps);
}

int compare(const Process& a, const Process& b) {
  if (int c = cmp_scalar(a.molecules.size(), b.molecules.size())) return c;
  for (std::size_t i = 0; i < a.molecules.size(); ++i)
    if (int c = compare(a.molecules[i], b.molecules[i])) return c;
  return 0;
}

}  // namespace mimc
