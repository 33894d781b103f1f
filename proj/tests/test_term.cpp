#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mimc/gen.hpp"
#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

using namespace mimc;

TEST_CASE("stripping a species erases every capability") {
  Process p = parse_process("{bind(C){}}.({mod('p){}}.A:{bind(A){}}.B)");
  NamePtr n = strip_species(p.molecules.at(0));
  CHECK(print_name_raw(n) == "(A:B)");

  SUBCASE("already stripped species is a fixed point") {
    SpeciesPtr bare = parse_process("A").molecules.at(0);
    CHECK(print_name_raw(strip_species(bare)) == "A");
    CHECK(name_equal(strip_species(species_from_name(strip_species(bare))), strip_species(bare)));
  }

  SUBCASE("nested trimer") {
    Process trimer = parse_process(fixtures::kP3);
    // the bound promoter complex strips to (E2:(DP1:E2F1))
    bool found = false;
    for (const auto& s : trimer.molecules)
      if (print_name_raw(strip_species(s)) == "(E2:(DP1:E2F1))") found = true;
    CHECK(found);
  }
}

TEST_CASE("stripping a process yields the set of molecule names") {
  CHECK(strip_process(Process{}).empty());

  Process dup = parse_process("{bind(B){}}.A | {}.A | B");
  NameSet names = strip_process(dup);
  CHECK(names.size() == 2);
  CHECK(names.contains(name_elem("A")));
  CHECK(names.contains(name_elem("B")));

  NameSet p1_names = strip_process(fixtures::p1());
  CHECK(p1_names.size() == 5);
  for (const char* id : {"E2F1", "DP1", "pRb", "E2", "DNA"}) CHECK(p1_names.contains(name_elem(id)));
}

TEST_CASE("substitution") {
  CapPtr gamma = cap_sum({BasicCap{{}, {}, Cleave{name_bond(name_elem("A"), name_elem("B"))}}});

  SUBCASE("replaces the variable itself") {
    CHECK(compare(substitute(cap_var("x"), "x", gamma), gamma) == 0);
  }

  SUBCASE("bound occurrences stay untouched") {
    CapPtr rec = cap_rec("x", cap_sum({BasicCap{{}, {}, NonCovBind{name_elem("A"), cap_var("x")}}}));
    CHECK(compare(substitute(rec, "x", gamma), rec) == 0);
  }

  SUBCASE("one-step unfolding of the enzyme puts the full rec term in the payload") {
    Process sys = parse_process(fixtures::kEnzymeSpecies);
    CapPtr rec = sys.molecules.at(0)->caps;
    CapPtr unfolded = unfold_rec(rec);
    const auto& sum = std::get<Capability::Sum>(unfolded->node);
    REQUIRE(sum.summands.size() == 1);
    const auto& bind = std::get<NonCovBind>(sum.summands.at(0).op);
    const auto& cont = std::get<Capability::Sum>(bind.cont->node);
    const auto& conv = std::get<Convert>(cont.summands.at(0).op);
    bool enzyme_in_payload = false;
    for (const auto& s : conv.products.molecules)
      if (print_name_raw(strip_species(s)) == "E" && caps_equal(s->caps, rec)) enzyme_in_payload = true;
    CHECK(enzyme_in_payload);
    CHECK(caps_equal(rec, unfolded));
  }

  SUBCASE("capture is avoided when the replacement has free variables") {
    // substituting y := {bind(A)x} under a binder named x must not capture
    CapPtr repl = cap_sum({BasicCap{{}, {}, NonCovBind{name_elem("A"), cap_var("x")}}});
    CapPtr body = cap_rec("x", cap_sum({BasicCap{{}, {}, NonCovBind{name_elem("B"), cap_var("y")}}}));
    CapPtr result = substitute(body, "y", repl);
    std::vector<std::string> fv;
    collect_free_vars(result, fv);
    REQUIRE(fv.size() == 1);
    CHECK(fv.at(0) == "x");
  }
}

TEST_CASE("canonicalization") {
  SUBCASE("parallel composition is reordered") {
    Process p = parse_process("{}.B | {}.A");
    CHECK(print_process_raw(canonicalize(p)) == "{}.A | {}.B");
  }

  SUBCASE("compound children are reordered") {
    Process p = parse_process("({}.B:{}.A)");
    CHECK(print_process_raw(canonicalize(p)) == "{}.({}.A:{}.B)");
  }

  SUBCASE("duplicate summands collapse") {
    Process p = parse_process("{bind(B){} + mod('p){} + bind(B){}}.A");
    CHECK(print_process_raw(canonicalize(p)) == "{bind(B){} + mod('p){}}.A");
  }

  SUBCASE("idempotent on random terms") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      Process p = random_process(rng);
      Process once = canonicalize(p);
      CHECK(print_process_raw(canonicalize(once)) == print_process_raw(once));
    }
  }

  SUBCASE("stripping commutes with canonicalization") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
      Process p = random_process(rng);
      CHECK(compare(strip_process(p), strip_process(canonicalize(p))) == 0);
    }
  }
}

TEST_CASE("capability equality") {
  SUBCASE("rec equals its one-step unfolding") {
    CapPtr rec = parse_process(fixtures::kEnzymeSpecies).molecules.at(0)->caps;
    CHECK(caps_equal(rec, unfold_rec(rec)));
    CHECK(caps_equal(unfold_rec(rec), rec));
  }

  SUBCASE("summand order is irrelevant") {
    CapPtr a = parse_process("{bind(B){} + mod('p){}}.A").molecules.at(0)->caps;
    CapPtr b = parse_process("{mod('p){} + bind(B){}}.A").molecules.at(0)->caps;
    CHECK(caps_equal(a, b));
  }

  SUBCASE("alpha conversion") {
    CapPtr a = parse_process("rec x.{bind(A){conv(x.E | C)}}.E").molecules.at(0)->caps;
    CapPtr b = parse_process("rec y.{bind(A){conv(y.E | C)}}.E").molecules.at(0)->caps;
    CHECK(caps_equal(a, b));
  }

  SUBCASE("distinct partners differ") {
    CapPtr a = parse_process("{bind(B){}}.A").molecules.at(0)->caps;
    CapPtr b = parse_process("{bind(C){}}.A").molecules.at(0)->caps;
    CHECK(!caps_equal(a, b));
  }

  SUBCASE("bisimilar but syntactically different recursions") {
    CapPtr a = parse_process("rec x.{bind(B)x}.A").molecules.at(0)->caps;
    CapPtr b = parse_process("rec x.{bind(B){bind(B)x}}.A").molecules.at(0)->caps;
    CHECK(caps_equal(a, b));
    CapPtr c = parse_process("rec x.{bind(B){bind(C)x}}.A").molecules.at(0)->caps;
    CHECK(!caps_equal(a, c));
  }

  SUBCASE("continuation differences below an equal head are found") {
    CapPtr a = parse_process("rec x.{bind(A)x + bind(B)x}.S").molecules.at(0)->caps;
    CapPtr b = parse_process("rec x.{bind(A)x + bind(B){bind(A)x}}.S").molecules.at(0)->caps;
    CHECK(!caps_equal(a, b));
  }

  SUBCASE("summand matching backtracks across equal operators") {
    CapPtr a = parse_process("{bind(A){bind(B){}} + bind(A){bind(C){}}}.S").molecules.at(0)->caps;
    CapPtr b = parse_process("{bind(A){bind(C){}} + bind(A){bind(B){}}}.S").molecules.at(0)->caps;
    CHECK(caps_equal(a, b));
    CapPtr c = parse_process("{bind(A){bind(B){}} + bind(A){bind(B){}}}.S").molecules.at(0)->caps;
    CHECK(!caps_equal(a, c));  // {B,C} continuations versus {B} after idempotency
  }

  SUBCASE("unfold-once on random rec capabilities") {
    std::mt19937_64 rng(9);
    int seen = 0;
    for (int i = 0; i < 200 && seen < 30; ++i) {
      Process p = random_process(rng);
      for (const auto& s : p.molecules) {
        if (std::holds_alternative<Capability::Rec>(s->caps->node)) {
          CHECK(caps_equal(s->caps, unfold_rec(s->caps)));
          ++seen;
        }
      }
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("process equality") {
  SUBCASE("unit and commutativity") {
    CHECK(process_equal(parse_process("{}.A"), parse_process("{}.A")));
    CHECK(process_equal(parse_process("{}.A | {}.B"), parse_process("{}.B | {}.A")));
    CHECK(process_equal(Process{}, parse_process("0")));
  }

  SUBCASE("distinct capabilities differ") {
    CHECK(!process_equal(parse_process("{bind(B){}}.A"), parse_process("{bind(C){}}.A")));
  }

  SUBCASE("equivalence relation on random terms") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 25; ++i) {
      Process p = random_process(rng);
      Process q = shuffled(rng, p, Shuffle::ParOrder);
      Process r = shuffled(rng, q, Shuffle::SumOrder);
      CHECK(process_equal(p, p));
      CHECK(process_equal(p, q));
      CHECK(process_equal(q, p));
      CHECK(process_equal(q, r));
      CHECK(process_equal(p, r));
    }
  }

  SUBCASE("multiplicities matter") {
    CHECK(!process_equal(parse_process("{}.A"), parse_process("{}.A | {}.A")));
  }

  SUBCASE("renaming one bind partner is always detected") {
    // equality must separate terms that differ in a single partner name,
    // no matter how deeply the summand is buried or shuffled
    std::mt19937_64 rng(12);
    int mutated = 0;
    for (int i = 0; i < 60 && mutated < 25; ++i) {
      Process p = random_process(rng);
      std::string text = print_process(p);
      auto pos = text.find("bind(A)");
      if (pos == std::string::npos) continue;
      std::string changed = text;
      changed.replace(pos, 7, "bind(Z9)");
      Process q = parse_process(changed);
      Process q_shuffled = shuffled(rng, shuffled(rng, q, Shuffle::RecUnfold), Shuffle::SumOrder);
      CHECK(!process_equal(p, q));
      CHECK(!process_equal(p, q_shuffled));
      ++mutated;
    }
    CHECK(mutated > 0);
  }
}

TEST_CASE("validation") {
  SUBCASE("non-contractive recursion is rejected at construction") {
    Process p;
    p.molecules.push_back(make_species(cap_rec("x", cap_var("x")), inner_elem("A")));
    CHECK_THROWS_AS(validate_process(p), TermError);

    Process q;
    q.molecules.push_back(make_species(cap_rec("x", cap_rec("y", cap_var("x"))), inner_elem("A")));
    CHECK_THROWS_AS(validate_process(q), TermError);
  }

  SUBCASE("guarded recursion passes") {
    CHECK_NOTHROW(validate_process(parse_process(fixtures::kEnzymeSystem)));
  }

  SUBCASE("free variables are rejected") {
    Process p;
    p.molecules.push_back(make_species(cap_var("x"), inner_elem("A")));
    CHECK_THROWS_AS(validate_process(p), TermError);
  }

  SUBCASE("cleave target shape is checked") {
    Process p;
    p.molecules.push_back(
        make_species(cap_sum({BasicCap{{}, {}, Cleave{name_elem("A")}}}), inner_elem("B")));
    CHECK_THROWS_AS(validate_process(p), TermError);
  }
}

TEST_CASE("name sets are duplicate-free and ordered") {
  NameSet s;
  s.insert(name_elem("B"));
  s.insert(name_elem("A"));
  s.insert(name_elem("B"));
  CHECK(s.size() == 2);
  CHECK(print_name_raw(*s.begin()) == "A");
  s.erase(name_elem("A"));
  CHECK(s.size() == 1);
  CHECK(!s.contains(name_elem("A")));
}
