#pragma once

#include <string>

#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

// Shared model terms used across the suites: the three-species A/B/C system,
// the recursive enzyme, and the E2F1/DP1/pRb promoter-binding pathway.
namespace fixtures {

inline const std::string kAbcTerm =
    "{bind(B){bind(C){}}}.A | {bind(B){bind(C){}}}.A | "
    "{bind(A){bind(C){}} + mod('p){}}.B | {bind(A){bind(C){}} + mod('p){}}.B | "
    "{bind((A:B)){}}.C";

inline const std::string kEnzymeSpecies = "rec x.{bind(A){conv(x.E | C)}}.E";
inline const std::string kEnzymeSystem = kEnzymeSpecies + " | A";

// capability table of the pathway species
inline const std::string kMu1 = "{bind(DP1){bind(E2){} + bind(pRb){bind(E2){}}}}";
inline const std::string kMu2 = "{bind(E2F1){bind(E2){} + bind(pRb){bind(E2){}}}}";
inline const std::string kMu3 = "{bind((E2F1:DP1)){bind(E2){}}}";
inline const std::string kMu4 = "{bind((E2F1:DP1)){} + bind(((E2F1:DP1):pRb)){}}";
inline const std::string kDna = "{[+((E2F1:DP1):E2);-(((E2F1:DP1):pRb):E2)]prod(mRNA)}.DNA";
inline const std::string kDimer =
    "{bind(E2){} + bind(pRb){bind(E2){}}}.(" + kMu1 + ".E2F1:" + kMu2 + ".DP1)";

inline const std::string kP1 = kMu1 + ".E2F1 | " + kMu1 + ".E2F1 | " + kMu2 + ".DP1 | " + kMu2 +
                               ".DP1 | " + kMu3 + ".pRb | " + kMu3 + ".pRb | " + kMu4 + ".E2 | " +
                               kDna;

inline const std::string kP2 = kMu1 + ".E2F1 | " + kMu2 + ".DP1 | " + kMu3 + ".pRb | " + kMu3 +
                               ".pRb | " + kMu4 + ".E2 | " + kDna + " | " + kDimer;

inline const std::string kP3 = kMu1 + ".E2F1 | " + kMu2 + ".DP1 | " + kMu3 + ".pRb | " + kMu3 +
                               ".pRb | " + kDna + " | {}.(" + kDimer + ":" + kMu4 + ".E2)";

// weakly but not strongly consistent pair
inline const std::string kWeakOnly = "{bind(B){}}.A | B";
inline const std::string kStrongPair = "{bind(B){}}.A | {bind(A){}}.B";

inline mimc::Process abc() { return mimc::parse_process(kAbcTerm); }
inline mimc::Process enzyme_system() { return mimc::parse_process(kEnzymeSystem); }
inline mimc::Process p1() { return mimc::parse_process(kP1); }
inline mimc::Process p2() { return mimc::parse_process(kP2); }
inline mimc::Process p3() { return mimc::parse_process(kP3); }

inline const std::string kAbcDiagram = R"json({
  "interpretation": "explicit",
  "species": [
    {"id": "A", "kind": "elementary", "count": 2},
    {"id": "B", "kind": "elementary", "count": 2},
    {"id": "C", "kind": "elementary", "count": 1}
  ],
  "reactions": [
    {"kind": "ncb", "participants": ["A", "B"]},
    {"kind": "ncb", "participants": ["(A:B)", "C"]},
    {"kind": "mod", "modtype": "p", "participants": ["B"]}
  ]
})json";

inline const std::string kEnzymeDiagram = R"json({
  "species": [
    {"id": "E", "kind": "elementary", "count": 1},
    {"id": "A", "kind": "elementary", "count": 1},
    {"id": "C", "kind": "elementary", "count": 0}
  ],
  "reactions": [
    {"kind": "ncb", "participants": ["E", "A"]},
    {"kind": "conv", "participants": ["(E:A)"], "products": [{"name": "C"}, {"name": "E"}]}
  ]
})json";

inline const std::string kPathwayDiagram = R"json({
  "species": [
    {"id": "E2F1", "kind": "elementary", "count": 2},
    {"id": "DP1", "kind": "elementary", "count": 2},
    {"id": "pRb", "kind": "elementary", "count": 2},
    {"id": "E2", "kind": "elementary", "count": 1},
    {"id": "DNA", "kind": "elementary", "count": 1},
    {"id": "mRNA", "kind": "elementary", "count": 0}
  ],
  "reactions": [
    {"kind": "ncb", "participants": ["E2F1", "DP1"]},
    {"kind": "ncb", "participants": ["(E2F1:DP1)", "pRb"]},
    {"kind": "ncb", "participants": ["(E2F1:DP1)", "E2"]},
    {"kind": "ncb", "participants": ["((E2F1:DP1):pRb)", "E2"]},
    {"kind": "prod", "participants": ["DNA"], "products": [{"name": "mRNA"}],
     "promoters": ["((E2F1:DP1):E2)"], "inhibitors": ["(((E2F1:DP1):pRb):E2)"]}
  ]
})json";

}  // namespace fixtures
