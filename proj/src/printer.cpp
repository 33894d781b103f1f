#include <sstream>

#include "mimc/semantics.hpp"
#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

namespace mimc {

namespace {

void render_name(const NamePtr& n, std::string& out) {
  switch (n->kind) {
    case Name::Kind::Elementary:
      out += n->ident;
      break;
    case Name::Kind::NonCovalent:
      out += '(';
      render_name(n->left, out);
      out += ':';
      render_name(n->right, out);
      out += ')';
      break;
    case Name::Kind::CovalentMod:
      out += "['";
      out += n->ident;
      out += ' ';
      render_name(n->left, out);
      out += ']';
      break;
    case Name::Kind::CovalentBond:
      out += '[';
      render_name(n->left, out);
      out += ' ';
      render_name(n->right, out);
      out += ']';
      break;
  }
}

void render_cap(const CapPtr& c, std::string& out);
void render_species(const SpeciesPtr& s, std::string& out);

void render_process(const Process& p, std::string& out) {
  if (p.molecules.empty()) {
    out += '0';
    return;
  }
  bool first = true;
  for (const auto& s : p.molecules) {
    if (!first) out += " | ";
    first = false;
    render_species(s, out);
  }
}

void render_gamma(const BasicCap& g, std::string& out) {
  if (!g.promoters.empty() || !g.inhibitors.empty()) {
    out += "[+";
    bool first = true;
    for (const auto& n : g.promoters) {
      if (!first) out += ',';
      first = false;
      render_name(n, out);
    }
    out += ";-";
    first = true;
    for (const auto& n : g.inhibitors) {
      if (!first) out += ',';
      first = false;
      render_name(n, out);
    }
    out += ']';
  }
  if (const auto* b = std::get_if<NonCovBind>(&g.op)) {
    out += "bind(";
    render_name(b->partner, out);
    out += ')';
    render_cap(b->cont, out);
  } else if (const auto* cb = std::get_if<CovBind>(&g.op)) {
    out += "cbind(";
    render_name(cb->partner, out);
    out += ')';
    render_cap(cb->cont, out);
  } else if (const auto* m = std::get_if<CovMod>(&g.op)) {
    out += "mod('";
    out += m->modtype;
    out += ')';
    render_cap(m->cont, out);
  } else if (const auto* cl = std::get_if<Cleave>(&g.op)) {
    out += "cleave(";
    render_name(cl->target, out);
    out += ')';
  } else if (const auto* cv = std::get_if<Convert>(&g.op)) {
    out += "conv(";
    render_process(cv->products, out);
    out += ')';
  } else {
    out += "prod(";
    render_process(std::get<Produce>(g.op).products, out);
    out += ')';
  }
}

void render_cap(const CapPtr& c, std::string& out) {
  if (const auto* rec = std::get_if<Capability::Rec>(&c->node)) {
    out += "rec ";
    out += rec->var;
    out += '.';
    render_cap(rec->body, out);
  } else if (const auto* var = std::get_if<Capability::Var>(&c->node)) {
    out += var->name;
  } else {
    const auto& summands = std::get<Capability::Sum>(c->node).summands;
    out += '{';
    bool first = true;
    for (const auto& g : summands) {
      if (!first) out += " + ";
      first = false;
      render_gamma(g, out);
    }
    out += '}';
  }
}

void render_species(const SpeciesPtr& s, std::string& out) {
  render_cap(s->caps, out);
  out += '.';
  switch (s->body->kind) {
    case InnerSpecies::Kind::Elementary:
      out += s->body->ident;
      break;
    case InnerSpecies::Kind::NonCovalent:
      out += '(';
      render_species(s->body->left, out);
      out += ':';
      render_species(s->body->right, out);
      out += ')';
      break;
    case InnerSpecies::Kind::CovalentMod:
      out += "['";
      out += s->body->ident;
      out += ' ';
      render_species(s->body->left, out);
      out += ']';
      break;
    case InnerSpecies::Kind::CovalentBond:
      out += '[';
      render_species(s->body->left, out);
      out += ' ';
      render_species(s->body->right, out);
      out += ']';
      break;
  }
}

}  // namespace

std::string print_process_raw(const Process& p) {
  std::string out;
  render_process(p, out);
  return out;
}

std::string print_species_raw(const SpeciesPtr& s) {
  std::string out;
  render_species(s, out);
  return out;
}

std::string print_cap_raw(const CapPtr& c) {
  std::string out;
  render_cap(c, out);
  return out;
}

std::string print_name_raw(const NamePtr& n) {
  std::string out;
  render_name(n, out);
  return out;
}

std::string print_process(const Process& p) { return print_process_raw(canonicalize(p)); }

std::string print_name(const NamePtr& n) { return print_name_raw(canonical_name(n)); }

std::string print_capability(const CapPtr& c) { return print_cap_raw(canonicalize_cap(c)); }

std::string print_action(const Action& a) {
  std::string out;
  auto names_block = [&](const NameSet& ns) {
    out += '{';
    bool first = true;
    for (const auto& n : ns) {
      if (!first) out += ',';
      first = false;
      render_name(n, out);
    }
    out += '}';
  };
  switch (a.kind) {
    case Action::Kind::NcBond:
      out += "ncb(";
      render_name(a.subject, out);
      out += ',';
      render_name(a.object, out);
      out += ')';
      break;
    case Action::Kind::NcUnbond:
      out += "ncu(";
      render_name(a.subject, out);
      out += ',';
      render_name(a.object, out);
      out += ')';
      break;
    case Action::Kind::Conversion:
      out += "conv(";
      render_name(a.subject, out);
      out += ',';
      names_block(a.products);
      out += ')';
      break;
    case Action::Kind::Production:
      out += "prod(";
      render_name(a.subject, out);
      out += ',';
      names_block(a.products);
      out += ')';
      break;
    case Action::Kind::CovBond:
      out += "cb(";
      render_name(a.subject, out);
      out += ',';
      render_name(a.object, out);
      out += ')';
      break;
    case Action::Kind::CleaveBond:
      out += "clvb(";
      render_name(a.subject, out);
      out += ',';
      render_name(a.object, out);
      out += ')';
      break;
    case Action::Kind::Modification:
      out += "mod('";
      out += a.modtype;
      out += ',';
      render_name(a.subject, out);
      out += ')';
      break;
    case Action::Kind::CleaveMod:
      out += "clvm(";
      render_name(a.subject, out);
      out += ',';
      render_name(a.object, out);
      out += ')';
      break;
  }
  return out;
}

std::string format_parse_error(std::string_view input, const ParseError& err, bool color) {
  const char* red = color ? "\x1b[31;1m" : "";
  const char* bold = color ? "\x1b[1m" : "";
  const char* reset = color ? "\x1b[0m" : "";

  std::size_t pos = err.span.begin > input.size() ? input.size() : err.span.begin;
  std::size_t line_start = input.rfind('\n', pos == 0 ? 0 : pos - 1);
  line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
  if (pos < line_start) line_start = pos;
  std::size_t line_end = input.find('\n', pos);
  if (line_end == std::string_view::npos) line_end = input.size();

  std::size_t line_no = 1;
  for (std::size_t i = 0; i < line_start; ++i)
    if (input[i] == '\n') ++line_no;
  std::size_t col = pos - line_start + 1;

  std::ostringstream out;
  out << red << "error" << reset << bold << ": " << err.what() << reset << '\n';
  out << "  --> line " << line_no << ", column " << col << '\n';
  out << "   | " << input.substr(line_start, line_end - line_start) << '\n';
  out << "   | " << std::string(col - 1, ' ') << red;
  std::size_t width = err.span.end > err.span.begin ? err.span.end - err.span.begin : 1;
  if (pos + width > line_end) width = line_end > pos ? line_end - pos : 1;
  out << std::string(width == 0 ? 1 : width, '^') << reset;
  if (!err.expected.empty()) {
    out << " expected ";
    for (std::size_t i = 0; i < err.expected.size(); ++i) {
      if (i) out << (i + 1 == err.expected.size() ? " or " : ", ");
      out << err.expected[i];
    }
  }
  out << '\n';
  return out.str();
}

}  // namespace mimc
