#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mimc/term.hpp"

namespace mimc {

struct DiagramError : std::runtime_error {
  explicit DiagramError(const std::string& what) : std::runtime_error(what) {}
};

struct DiagramSpecies {
  NamePtr name;
  bool elementary = true;
  int count = 0;
};

struct DiagramReaction {
  enum class Kind { NcBind, CovBind, Mod, Cleave, Convert, Produce, Degrade };
  Kind kind = Kind::NcBind;
  std::vector<NamePtr> participants;
  std::string modtype;                          // Mod
  NamePtr cleave_target;                        // Cleave
  std::vector<std::pair<NamePtr, int>> products;  // Convert, Produce
  NameSet promoters;
  NameSet inhibitors;
  std::optional<NamePtr> product_caps_ref;  // overrides the compound entry used as continuation
};

struct DiagramSpec {
  std::vector<DiagramSpecies> species;
  std::vector<DiagramReaction> reactions;
};

/// Parses the .mimd.json encoding. Rejects non-explicit interpretations and
/// rate-level contingency kinds (stimulation, catalysis).
DiagramSpec diagram_from_json(const std::string& text);

/// Capability per species name, closed under every name any capability can
/// produce. Binding reactions install the same continuation on both
/// participants, so instantiations are strongly syntactically consistent.
class SpeciesTable {
 public:
  const std::vector<std::pair<NamePtr, CapPtr>>& entries() const { return entries_; }
  const CapPtr* find(const NamePtr& name) const;
  std::size_t size() const { return entries_.size(); }

 private:
  friend SpeciesTable compile_table(const DiagramSpec& d);
  std::vector<std::pair<NamePtr, CapPtr>> entries_;  // sorted by name
};

SpeciesTable compile_table(const DiagramSpec& d);

/// Builds the species term for a table name: the table capability on top and
/// table capabilities on every compound component.
SpeciesPtr table_species(const SpeciesTable& t, const NamePtr& name);

/// Parallel composition with the requested number of copies per name,
/// canonicalized.
Process instantiate(const SpeciesTable& t, const std::vector<std::pair<NamePtr, int>>& counts);

/// Counts as declared in the diagram.
std::vector<std::pair<NamePtr, int>> declared_counts(const DiagramSpec& d);

}  // namespace mimc
