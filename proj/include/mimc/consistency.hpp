#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimc/term.hpp"

namespace mimc {

/// A capability position of a term: the species name the position belongs to
/// together with the capability sitting there.
struct PositionEntry {
  NamePtr name;  // canonical
  CapPtr caps;   // closed over enclosing rec binders
  std::string path;
};

/// One entry per capability position: the capability of every molecule and
/// nested sub-species, the continuation of every bind/cbind/mod summand with
/// the name extended accordingly, and, recursively, every position inside
/// convert/produce payloads. Rec bodies are traversed once; variable
/// positions contribute no entries.
std::vector<PositionEntry> enumerate_positions(const Process& p);

struct Witness {
  enum class Kind { CapabilityClash, MissingReciprocal, StateClash };
  Kind kind = Kind::CapabilityClash;
  PositionEntry first;
  PositionEntry second;
  std::string detail;
  std::string state_first;   // StateClash only
  std::string state_second;  // StateClash only
};

struct ConsistencyVerdict {
  enum class Kind { Consistent, Inconsistent, ConsistentUpToDepth };
  Kind kind = Kind::Consistent;
  std::size_t depth = 0;  // ConsistentUpToDepth only
  std::optional<Witness> witness;
};

/// Same-name positions must carry equal capabilities.
ConsistencyVerdict check_weak(const Process& p);

/// check_weak plus reciprocal bind/cbind summands between every pair of
/// position names.
ConsistencyVerdict check_strong(const Process& p);

/// Same-name top-level molecules across all reachable states (within the
/// given bounds) must carry equal capabilities.
ConsistencyVerdict check_semantic(const Process& p, std::size_t max_depth, std::size_t max_states);

std::string verdict_to_json(const ConsistencyVerdict& v);

struct Prop1Failure {
  std::size_t trial = 0;
  std::string term;
  std::string stage;  // "weak" or "semantic"
  std::string verdict_json;
};

struct Prop1Report {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t depth = 0;
  std::vector<Prop1Failure> failures;
};

/// Draws random diagram-derived terms (weakly consistent by construction),
/// verifies check_weak and asserts check_semantic never refutes within the
/// bound. Any failure reports an implementation bug.
Prop1Report run_proposition1(std::uint64_t seed, std::size_t trials, std::size_t depth,
                             std::size_t max_states = 10000);

std::string report_to_json(const Prop1Report& r);

}  // namespace mimc
