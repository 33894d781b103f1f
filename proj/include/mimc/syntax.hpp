#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mimc/term.hpp"

namespace mimc {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span, std::vector<std::string> expected = {})
      : std::runtime_error(std::move(message)), span(span), expected(std::move(expected)) {}

  SourceSpan span;
  std::vector<std::string> expected;
};

/// Parses the full input as a process; validates variable scoping, cleave
/// target shapes and recursion contractiveness. Throws ParseError.
Process parse_process(std::string_view input);

/// Parses the capability-free name grammar.
NamePtr parse_name(std::string_view input);

// Canonical printing. print_process canonicalizes first; the *_raw variants
// render the given structure as-is and are stable on canonical terms.
std::string print_process(const Process& p);
std::string print_name(const NamePtr& n);
std::string print_capability(const CapPtr& c);

std::string print_process_raw(const Process& p);
std::string print_species_raw(const SpeciesPtr& s);
std::string print_cap_raw(const CapPtr& c);
std::string print_name_raw(const NamePtr& n);

/// Human-readable diagnostic with the offending line and a caret marker.
std::string format_parse_error(std::string_view input, const ParseError& err, bool color);

}  // namespace mimc
