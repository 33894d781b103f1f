#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "mimc/gen.hpp"
#include "mimc/semantics.hpp"
#include "mimc/syntax.hpp"
#include "mimc/term.hpp"
#include "oracle.hpp"

using namespace mimc;

namespace {

bool has_transition(const std::vector<Transition>& ts, const Action& a, const Process& target) {
  for (const auto& t : ts)
    if (action_equal(t.action, a) && process_equal(t.target, target)) return true;
  return false;
}

bool has_action(const std::vector<Transition>& ts, const Action& a) {
  for (const auto& t : ts)
    if (action_equal(t.action, a)) return true;
  return false;
}

}  // namespace

TEST_CASE("local redexes") {
  SUBCASE("a lone compound can always dissociate") {
    Process p = canonicalize(parse_process("{bind(C){}}.({mod('p){}}.A:{}.B)"));
    auto redexes = local_redexes(p);
    REQUIRE(redexes.size() == 1);
    CHECK(redexes.at(0).promoters.empty());
    CHECK(redexes.at(0).inhibitors.empty());
    CHECK(print_action(redexes.at(0).action) == "ncu(A,B)");
    CHECK(process_equal(redexes.at(0).target, parse_process("{mod('p){}}.A | {}.B")));
  }

  SUBCASE("empty process has none") { CHECK(local_redexes(Process{}).empty()); }

  SUBCASE("three-species system instance counts") {
    Process p = canonicalize(fixtures::abc());
    auto redexes = local_redexes(p);
    int ncb = 0, mod = 0, other = 0;
    for (const auto& r : redexes) {
      switch (r.action.kind) {
        case Action::Kind::NcBond: ++ncb; break;
        case Action::Kind::Modification: ++mod; break;
        default: ++other; break;
      }
    }
    // each of the two A holds a bind toward each B, and symmetrically
    CHECK(ncb == 8);
    CHECK(mod == 2);
    CHECK(other == 0);
  }
}

TEST_CASE("enabled transitions") {
  SUBCASE("three-species system collapses to two transitions") {
    auto ts = enabled_transitions(fixtures::abc());
    REQUIRE(ts.size() == 2);
    CHECK(has_action(ts, action_ncbond(name_elem("A"), name_elem("B"))));
    CHECK(has_action(ts, action_modification("p", name_elem("B"))));
  }

  SUBCASE("pathway: dimerization reaches the displayed successor") {
    auto ts = enabled_transitions(fixtures::p1());
    REQUIRE(ts.size() == 1);
    CHECK(has_transition(ts, action_ncbond(name_elem("E2F1"), name_elem("DP1")), fixtures::p2()));
  }

  SUBCASE("production is gated by its promoter") {
    NameSet mrna;
    mrna.insert(name_elem("mRNA"));
    Action produce = action_production(name_elem("DNA"), mrna);

    CHECK(!has_action(enabled_transitions(fixtures::p1()), produce));

    auto from_p3 = enabled_transitions(fixtures::p3());
    Process expected = parse_process(fixtures::kP3 + " | mRNA");
    CHECK(has_transition(from_p3, produce, expected));
  }

  SUBCASE("production is blocked by its inhibitor") {
    Process blocked = parse_process(fixtures::kP3 + " | (((E2F1:DP1):pRb):E2)");
    NameSet mrna;
    mrna.insert(name_elem("mRNA"));
    CHECK(!has_action(enabled_transitions(blocked), action_production(name_elem("DNA"), mrna)));
  }

  SUBCASE("a reactant cannot discharge its own promoter") {
    // the promoter must come from a distinct parallel molecule
    Process alone = parse_process("{[+A;-]conv(B)}.A");
    CHECK(enabled_transitions(alone).empty());
    Process with_peer = parse_process("{[+A;-]conv(B)}.A | {}.A");
    CHECK(enabled_transitions(with_peer).size() == 1);
  }

  SUBCASE("an inhibitor which is also the reactant blocks the rule premise") {
    Process self_blocked = parse_process("{[+;-A]conv(B)}.A");
    CHECK(enabled_transitions(self_blocked).empty());
  }

  SUBCASE("covalent cycle: bind, cleave bond, modification removal") {
    auto ts = enabled_transitions(parse_process("{cbind(B){}}.A | {}.B"));
    REQUIRE(ts.size() == 1);
    CHECK(has_action(ts, action_covbond(name_elem("A"), name_elem("B"))));

    auto cleaved = enabled_transitions(parse_process("{cleave([A B])}.E | [{}.A {}.B]"));
    REQUIRE(cleaved.size() == 1);
    CHECK(has_transition(cleaved, action_cleave_bond(name_elem("E"), parse_name("[A B]")),
                         parse_process("{cleave([A B])}.E | A | B")));

    auto unmod = enabled_transitions(parse_process("{cleave(['p B])}.E | ['p {}.B]"));
    REQUIRE(unmod.size() == 1);
    CHECK(has_transition(unmod, action_cleave_mod(name_elem("E"), parse_name("['p B]")),
                         parse_process("{cleave(['p B])}.E | B")));
  }

  SUBCASE("targets differing only by rec unfolding are merged") {
    // the two A molecules carry equal capabilities written differently, so
    // binding either one reaches the same state up to congruence
    Process p = parse_process(
        "rec x.{bind(B)x}.A | {bind(B)rec x.{bind(B)x}}.A | {}.B");
    auto ts = enabled_transitions(p);
    REQUIRE(ts.size() == 1);
    CHECK(has_action(ts, action_ncbond(name_elem("A"), name_elem("B"))));
    Lts lts = explore(p, 1, 100);
    CHECK(lts.states.size() == 2);
  }

  SUBCASE("deterministic output") {
    Process p = fixtures::abc();
    auto a = enabled_transitions(p);
    auto b = enabled_transitions(p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(print_action(a[i].action) == print_action(b[i].action));
      CHECK(print_process_raw(a[i].target) == print_process_raw(b[i].target));
    }
  }
}

TEST_CASE("transition sets are congruence-stable") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int i = 0; i < 12; ++i) {
    GenOptions opts;
    opts.max_molecules = 4;
    Process p = random_process(rng, opts);
    for (Shuffle kind : {Shuffle::ParOrder, Shuffle::SumOrder, Shuffle::CompoundSwap,
                         Shuffle::SumDup, Shuffle::RecUnfold, Shuffle::AlphaRename}) {
      Process q = shuffled(rng, p, kind);
      REQUIRE(process_equal(p, q));
      CHECK(oracle::same_transition_sets(enabled_transitions(p), enabled_transitions(q)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("every reachable compound can dissociate") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 15; ++i) {
    GenOptions opts;
    opts.max_molecules = 4;
    Process p = canonicalize(random_process(rng, opts));
    auto ts = enabled_transitions(p);
    for (const auto& s : p.molecules) {
      if (s->body->kind != InnerSpecies::Kind::NonCovalent) continue;
      Action expected =
          action_ncunbond(strip_species(s->body->left), strip_species(s->body->right));
      bool found = false;
      for (const auto& t : ts)
        if (action_equal(t.action, expected)) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("brute-force oracle agrees on small states") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 25; ++i) {
    Process p = random_process(rng);
    CAPTURE(print_process(p));
    CHECK(oracle::same_transition_sets(enabled_transitions(p), oracle::transitions(p)));
  }
}

TEST_CASE("bounded exploration") {
  SUBCASE("empty process") {
    Lts lts = explore(Process{}, 10, 100);
    CHECK(lts.states.size() == 1);
    CHECK(lts.edges.empty());
    CHECK(!lts.truncated);
  }

  SUBCASE("pathway reaches the bound complex in two steps") {
    Lts lts = explore(fixtures::p1(), 2, 1000);
    std::size_t p2_id = SIZE_MAX, p3_id = SIZE_MAX;
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
      if (process_equal(lts.states[i], fixtures::p2())) p2_id = i;
      if (process_equal(lts.states[i], fixtures::p3())) p3_id = i;
    }
    REQUIRE(p2_id != SIZE_MAX);
    REQUIRE(p3_id != SIZE_MAX);
    Action first = action_ncbond(name_elem("E2F1"), name_elem("DP1"));
    Action second = action_ncbond(parse_name("(E2F1:DP1)"), name_elem("E2"));
    bool saw_first = false, saw_second = false;
    for (const auto& e : lts.edges) {
      if (e.from == 0 && e.to == p2_id && action_equal(e.action, first)) saw_first = true;
      if (e.from == p2_id && e.to == p3_id && action_equal(e.action, second)) saw_second = true;
    }
    CHECK(saw_first);
    CHECK(saw_second);
  }

  SUBCASE("enzyme is recreated with its recursive capability") {
    Process sys = parse_process(fixtures::kEnzymeSystem);
    CapPtr original = parse_process(fixtures::kEnzymeSpecies).molecules.at(0)->caps;
    Lts lts = explore(sys, 3, 100);
    CHECK(!lts.truncated);
    bool found = false;
    for (const auto& state : lts.states) {
      bool has_product = false, has_enzyme = false;
      for (const auto& s : state.molecules) {
        std::string n = print_name_raw(strip_species(s));
        if (n == "C") has_product = true;
        if (n == "E" && caps_equal(s->caps, original)) has_enzyme = true;
      }
      if (has_product && has_enzyme) found = true;
    }
    CHECK(found);
  }

  SUBCASE("state bound truncates and keeps edges consistent") {
    Lts lts = explore(fixtures::p1(), 10, 3);
    CHECK(lts.truncated);
    CHECK(lts.states.size() <= 3);
    for (const auto& e : lts.edges) {
      CHECK(e.from < lts.states.size());
      CHECK(e.to < lts.states.size());
    }
  }

  SUBCASE("exploration depth zero keeps only the initial state") {
    Lts lts = explore(fixtures::abc(), 0, 100);
    CHECK(lts.states.size() == 1);
    CHECK(lts.edges.empty());
  }
}

TEST_CASE("lts export") {
  Lts lts = explore(parse_process("{bind(B){}}.A | B"), 1, 10);
  std::string dot = lts_to_dot(lts);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("ncb(A,B)") != std::string::npos);

  auto j = nlohmann::json::parse(lts_to_json(lts));
  REQUIRE(j.contains("states"));
  REQUIRE(j.contains("edges"));
  CHECK(j.at("initial").get<int>() == 0);
  CHECK(j.at("truncated").is_boolean());
  REQUIRE(j.at("states").size() == lts.states.size());
  CHECK(j.at("states").at(0).get<std::string>() == lts.state_keys.at(0));
  for (const auto& e : j.at("edges")) {
    CHECK(e.at("from").get<std::size_t>() < lts.states.size());
    CHECK(e.at("to").get<std::size_t>() < lts.states.size());
    CHECK(!e.at("action").get<std::string>().empty());
  }
}

TEST_CASE("exploration is reproducible") {
  Lts a = explore(fixtures::p1(), 3, 500);
  Lts b = explore(fixtures::p1(), 3, 500);
  REQUIRE(a.states.size() == b.states.size());
  REQUIRE(a.edges.size() == b.edges.size());
  CHECK(a.truncated == b.truncated);
  for (std::size_t i = 0; i < a.states.size(); ++i) CHECK(a.state_keys[i] == b.state_keys[i]);
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].from == b.edges[i].from);
    CHECK(a.edges[i].to == b.edges[i].to);
    CHECK(print_action(a.edges[i].action) == print_action(b.edges[i].action));
  }
}
