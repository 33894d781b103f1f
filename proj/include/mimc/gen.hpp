#pragma once

#include <cstdint>
#include <random>

#include "mimc/diagram.hpp"
#include "mimc/term.hpp"

namespace mimc {

// Deterministic random term and diagram generators for property tests.
// All draws go through the engine directly so sequences are stable across
// standard library implementations.

struct GenOptions {
  int max_molecules = 6;
  int max_summands = 3;
  int max_depth = 2;  // nesting of compounds, continuations and payloads
  bool allow_rec = true;
  bool allow_contingencies = true;
};

Process random_process(std::mt19937_64& rng, const GenOptions& opts = {});

/// Valid by construction: participants resolve, cleave targets are
/// bond-shaped, per-species summand budget respected.
DiagramSpec random_diagram(std::mt19937_64& rng, int max_species = 5, int max_summands = 3);

enum class Shuffle { ParOrder, SumOrder, CompoundSwap, SumDup, RecUnfold, AlphaRename };

/// A structurally shuffled but congruent variant of p. All shuffles preserve
/// process_equal; every shuffle except RecUnfold also preserves the canonical
/// printout.
Process shuffled(std::mt19937_64& rng, const Process& p, Shuffle kind);

}  // namespace mimc
