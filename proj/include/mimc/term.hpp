#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mimc {

struct TermError : std::runtime_error {
  explicit TermError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

struct Name;
using NamePtr = std::shared_ptr<const Name>;

/// A capability-free species tree, used as species identity.
struct Name {
  enum class Kind { Elementary, NonCovalent, CovalentMod, CovalentBond };
  Kind kind = Kind::Elementary;
  std::string ident;  // elementary species name, or modification type
  NamePtr left;
  NamePtr right;  // unused for Elementary and CovalentMod
};

NamePtr name_elem(std::string ident);
NamePtr name_noncov(NamePtr a, NamePtr b);
NamePtr name_mod(std::string modtype, NamePtr inner);
NamePtr name_bond(NamePtr a, NamePtr b);

/// Compound children sorted by the total term order.
NamePtr canonical_name(const NamePtr& n);

int compare(const Name& a, const Name& b);
int compare(const NamePtr& a, const NamePtr& b);
inline bool name_equal(const NamePtr& a, const NamePtr& b) { return compare(a, b) == 0; }

/// Finite duplicate-free set of names, kept in canonical order.
class NameSet {
 public:
  NameSet() = default;
  explicit NameSet(std::vector<NamePtr> names);
  void insert(const NamePtr& n);
  void erase(const NamePtr& n);
  bool contains(const NamePtr& n) const;
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }
  friend int compare(const NameSet& a, const NameSet& b);

 private:
  std::vector<NamePtr> names_;
};

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Capability;
using CapPtr = std::shared_ptr<const Capability>;
struct InnerSpecies;
using InnerPtr = std::shared_ptr<const InnerSpecies>;
struct Species;
using SpeciesPtr = std::shared_ptr<const Species>;

/// Flattened parallel composition; the empty vector is the empty process.
struct Process {
  std::vector<SpeciesPtr> molecules;
};

struct NonCovBind {
  NamePtr partner;
  CapPtr cont;
};
struct CovBind {
  NamePtr partner;
  CapPtr cont;
};
struct CovMod {
  std::string modtype;
  CapPtr cont;
};
struct Cleave {
  NamePtr target;  // must name a covalent bond or a covalent modification
};
struct Convert {
  Process products;
};
struct Produce {
  Process products;
};
using CapOp = std::variant<NonCovBind, CovBind, CovMod, Cleave, Convert, Produce>;

/// One capability summand with its contingency pair.
struct BasicCap {
  NameSet promoters;   // species that must be present
  NameSet inhibitors;  // species that must be absent
  CapOp op;
};

struct Capability {
  struct Rec {
    std::string var;
    CapPtr body;
  };
  struct Var {
    std::string name;
  };
  struct Sum {
    std::vector<BasicCap> summands;  // empty means the null capability
  };
  std::variant<Rec, Var, Sum> node;
};

CapPtr cap_rec(std::string var, CapPtr body);
CapPtr cap_var(std::string name);
CapPtr cap_sum(std::vector<BasicCap> summands);
const CapPtr& cap_empty();

struct InnerSpecies {
  enum class Kind { Elementary, NonCovalent, CovalentMod, CovalentBond };
  Kind kind = Kind::Elementary;
  std::string ident;
  SpeciesPtr left;
  SpeciesPtr right;
};

/// Every species carries exactly one capability, possibly empty.
struct Species {
  CapPtr caps;
  InnerPtr body;
};

InnerPtr inner_elem(std::string ident);
InnerPtr inner_noncov(SpeciesPtr a, SpeciesPtr b);
InnerPtr inner_mod(std::string modtype, SpeciesPtr inner);
InnerPtr inner_bond(SpeciesPtr a, SpeciesPtr b);
SpeciesPtr make_species(CapPtr caps, InnerPtr body);

/// The name tree as a species with all-empty capabilities.
SpeciesPtr species_from_name(const NamePtr& n);

// ---------------------------------------------------------------------------
// Stripping, variables, substitution
// ---------------------------------------------------------------------------

NamePtr strip_species(const SpeciesPtr& s);
NamePtr strip_inner(const InnerPtr& body);
NameSet strip_process(const Process& p);

void collect_free_vars(const CapPtr& c, std::vector<std::string>& out);
bool is_closed(const Process& p);
bool is_closed_cap(const CapPtr& c);

/// Capture-avoiding substitution of `repl` for the free occurrences of `var`,
/// extended through convert/produce payload processes.
CapPtr substitute(const CapPtr& body, const std::string& var, const CapPtr& repl);

/// One unfolding step of a rec capability.
CapPtr unfold_rec(const CapPtr& rec);

/// Rejects free variables, non-contractive recursion and ill-shaped cleave
/// targets; throws TermError.
void validate_process(const Process& p);

// ---------------------------------------------------------------------------
// Structural congruence
// ---------------------------------------------------------------------------

/// Unique representative under parallel ACU, compound commutativity, sum ACUI
/// and canonical bound-variable renaming. Rec unfolding is not applied here;
/// caps_equal handles it.
Process canonicalize(const Process& p);
SpeciesPtr canonicalize_species(const SpeciesPtr& s);
CapPtr canonicalize_cap(const CapPtr& c);

/// Summands of a closed capability after unfolding leading rec binders;
/// result is canonical.
std::vector<BasicCap> head_summands(const CapPtr& c);

// Total order on canonical terms.
int compare(const Process& a, const Process& b);
int compare(const SpeciesPtr& a, const SpeciesPtr& b);
int compare(const InnerPtr& a, const InnerPtr& b);
int compare(const CapPtr& a, const CapPtr& b);
int compare(const BasicCap& a, const BasicCap& b);

/// Equality of closed capabilities under sum laws, alpha-conversion and rec
/// unfolding, decided by bisimulation on the denoted regular trees.
bool caps_equal(const CapPtr& a, const CapPtr& b);
bool species_equal(const SpeciesPtr& a, const SpeciesPtr& b);
bool process_equal(const Process& a, const Process& b);

}  // namespace mimc
