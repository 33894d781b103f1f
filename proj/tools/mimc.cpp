#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mimc/consistency.hpp"
#include "mimc/diagram.hpp"
#include "mimc/semantics.hpp"
#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

bool color_enabled() {
  const char* env = std::getenv("MIMC_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(2) != 0;
}

int with_parsed(const std::string& path, const std::function<int(const mimc::Process&)>& body) {
  std::string text = read_input(path);
  try {
    mimc::Process p = mimc::parse_process(text);
    return body(p);
  } catch (const mimc::ParseError& e) {
    std::cerr << mimc::format_parse_error(text, e, color_enabled());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIM calculus: parse terms, explore reductions, check consistency"};
  app.require_subcommand(1);

  std::string input = "-";
  std::size_t depth = 16;
  std::size_t max_states = 10000;
  std::string format = "json";
  std::string mode = "weak";
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::vector<std::string> count_overrides;

  auto* cmd_parse = app.add_subcommand("parse", "parse a term and print its canonical form");
  cmd_parse->add_option("input", input, "term file, or - for stdin");

  auto* cmd_explore = app.add_subcommand("explore", "build the bounded transition system of a term");
  cmd_explore->add_option("input", input, "term file, or - for stdin");
  cmd_explore->add_option("--depth", depth, "exploration depth bound");
  cmd_explore->add_option("--max-states", max_states, "state count bound");
  cmd_explore->add_option("--format", format, "dot, json or text")
      ->check(CLI::IsMember({"dot", "json", "text"}));

  auto* cmd_check = app.add_subcommand("check", "run a consistency check");
  cmd_check->add_option("input", input, "term file, or - for stdin");
  cmd_check->add_option("--mode", mode, "weak, strong or semantic")
      ->check(CLI::IsMember({"weak", "strong", "semantic"}));
  cmd_check->add_option("--depth", depth, "semantic exploration depth bound");
  cmd_check->add_option("--max-states", max_states, "semantic state count bound");

  auto* cmd_import = app.add_subcommand("import", "compile a diagram description into a term");
  cmd_import->add_option("input", input, "diagram .mimd.json file, or - for stdin");
  cmd_import->add_option("--count", count_overrides, "override a species count, NAME=K");

  auto* cmd_prop1 = app.add_subcommand("prop1",
                                       "property run: syntactic consistency entails bounded "
                                       "semantic consistency on random diagram terms");
  cmd_prop1->add_option("--seed", seed, "random seed");
  cmd_prop1->add_option("--trials", trials, "number of random terms");
  cmd_prop1->add_option("--depth", depth, "semantic exploration depth bound")->default_val(4);
  cmd_prop1->add_option("--max-states", max_states, "semantic state count bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_parse->parsed()) {
      return with_parsed(input, [](const mimc::Process& p) {
        std::cout << mimc::print_process(p) << '\n';
        return 0;
      });
    }

    if (cmd_explore->parsed()) {
      return with_parsed(input, [&](const mimc::Process& p) {
        mimc::Lts lts = mimc::explore(p, depth, max_states);
        if (lts.truncated)
          std::cerr << "warning: exploration truncated at depth " << depth << " / " << max_states
                    << " states\n";
        if (format == "dot") {
          std::cout << mimc::lts_to_dot(lts);
        } else if (format == "json") {
          std::cout << mimc::lts_to_json(lts) << '\n';
        } else {
          std::cout << "states: " << lts.states.size() << (lts.truncated ? " (truncated)" : "") << '\n';
          for (std::size_t i = 0; i < lts.states.size(); ++i)
            std::cout << i << ": " << lts.state_keys[i] << '\n';
          std::cout << "edges: " << lts.edges.size() << '\n';
          for (const auto& e : lts.edges)
            std::cout << e.from << " -[" << mimc::print_action(e.action) << "]-> " << e.to << '\n';
        }
        return 0;
      });
    }

    if (cmd_check->parsed()) {
      return with_parsed(input, [&](const mimc::Process& p) {
        mimc::ConsistencyVerdict v;
        if (mode == "weak")
          v = mimc::check_weak(p);
        else if (mode == "strong")
          v = mimc::check_strong(p);
        else
          v = mimc::check_semantic(p, depth, max_states);
        std::cout << mimc::verdict_to_json(v) << '\n';
        return v.kind == mimc::ConsistencyVerdict::Kind::Inconsistent ? 2 : 0;
      });
    }

    if (cmd_import->parsed()) {
      std::string text = read_input(input);
      mimc::DiagramSpec spec = mimc::diagram_from_json(text);
      mimc::SpeciesTable table = mimc::compile_table(spec);
      auto counts = mimc::declared_counts(spec);
      for (const auto& override_str : count_overrides) {
        auto eq = override_str.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("bad --count '" + override_str + "', expected NAME=K");
        mimc::NamePtr name = mimc::parse_name(override_str.substr(0, eq));
        int k = std::stoi(override_str.substr(eq + 1));
        bool found = false;
        for (auto& [n, c] : counts) {
          if (mimc::name_equal(mimc::canonical_name(n), mimc::canonical_name(name))) {
            c = k;
            found = true;
          }
        }
        if (!found) counts.emplace_back(name, k);
      }
      std::cout << mimc::print_process(mimc::instantiate(table, counts)) << '\n';
      return 0;
    }

    if (cmd_prop1->parsed()) {
      mimc::Prop1Report report = mimc::run_proposition1(seed, trials, depth, max_states);
      std::cout << mimc::report_to_json(report) << '\n';
      return report.failures.empty() ? 0 : 2;
    }
  } catch (const mimc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
