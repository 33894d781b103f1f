#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "mimc/syntax.hpp"
#include "mimc/term.hpp"

namespace mimc {

namespace {

struct Token {
  enum class Type {
    Ident,
    Zero,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Dot,
    Colon,
    Pipe,
    Plus,
    Minus,
    Comma,
    Semi,
    Quote,
    End,
  };
  Type type;
  std::string text;
  SourceSpan span;
};

std::vector<Token> lex(std::string_view input) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto single = [&](Token::Type t) {
    tokens.push_back(Token{t, std::string(input.substr(i, 1)), {i, i + 1}});
    ++i;
  };
  while (i < input.size()) {
    char c = input[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '{': single(Token::Type::LBrace); continue;
      case '}': single(Token::Type::RBrace); continue;
      case '(': single(Token::Type::LParen); continue;
      case ')': single(Token::Type::RParen); continue;
      case '[': single(Token::Type::LBracket); continue;
      case ']': single(Token::Type::RBracket); continue;
      case '.': single(Token::Type::Dot); continue;
      case ':': single(Token::Type::Colon); continue;
      case '|': single(Token::Type::Pipe); continue;
      case '+': single(Token::Type::Plus); continue;
      case '-': single(Token::Type::Minus); continue;
      case ',': single(Token::Type::Comma); continue;
      case ';': single(Token::Type::Semi); continue;
      case '\'': single(Token::Type::Quote); continue;
      default: break;
    }
    if (c == '0') {
      tokens.push_back(Token{Token::Type::Zero, "0", {i, i + 1}});
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < input.size() &&
             (std::isalnum(static_cast<unsigned char>(input[i])) || input[i] == '_'))
        ++i;
      tokens.push_back(Token{Token::Type::Ident, std::string(input.substr(start, i - start)), {start, i}});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", {i, i + 1});
  }
  tokens.push_back(Token{Token::Type::End, "", {input.size(), input.size()}});
  return tokens;
}

const char* token_label(Token::Type t) {
  switch (t) {
    case Token::Type::Ident: return "identifier";
    case Token::Type::Zero: return "'0'";
    case Token::Type::LBrace: return "'{'";
    case Token::Type::RBrace: return "'}'";
    case Token::Type::LParen: return "'('";
    case Token::Type::RParen: return "')'";
    case Token::Type::LBracket: return "'['";
    case Token::Type::RBracket: return "']'";
    case Token::Type::Dot: return "'.'";
    case Token::Type::Colon: return "':'";
    case Token::Type::Pipe: return "'|'";
    case Token::Type::Plus: return "'+'";
    case Token::Type::Minus: return "'-'";
    case Token::Type::Comma: return "','";
    case Token::Type::Semi: return "';'";
    case Token::Type::Quote: return "'''";
    case Token::Type::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view input) : tokens_(lex(input)) {}

  Process process_toplevel() {
    Process p = process();
    expect(Token::Type::End, "end of input");
    return p;
  }

  NamePtr name_toplevel() {
    NamePtr n = name();
    expect(Token::Type::End, "end of input");
    return n;
  }

 private:
  static constexpr int kMaxNesting = 512;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
  int depth_ = 0;

  // downstream term walkers recurse over the tree, so cap the admitted depth
  struct DepthGuard {
    Parser& parser;
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting)
        throw ParseError("nesting deeper than " + std::to_string(kMaxNesting) + " levels",
                         parser.peek().span);
    }
    ~DepthGuard() { --parser.depth_; }
  };

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at(Token::Type t) const { return peek().type == t; }
  bool accept(Token::Type t) {
    if (!at(t)) return false;
    advance();
    return true;
  }
  const Token& expect(Token::Type t, const std::string& what) {
    if (!at(t))
      throw ParseError("expected " + what + ", found " + token_label(peek().type), peek().span, {what});
    return advance();
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) {
    throw ParseError(message + ", found " + token_label(peek().type), peek().span, std::move(expected));
  }

  bool is_keyword(const Token& t, const char* kw) const {
    return t.type == Token::Type::Ident && t.text == kw;
  }

  bool bound(const std::string& v) const {
    return std::find(scope_.begin(), scope_.end(), v) != scope_.end();
  }

  Process process() {
    Process p;
    if (accept(Token::Type::Zero)) return p;
    p.molecules.push_back(species());
    while (accept(Token::Type::Pipe)) p.molecules.push_back(species());
    return p;
  }

  SpeciesPtr species() {
    DepthGuard guard(*this);
    switch (peek().type) {
      case Token::Type::LBrace: {
        CapPtr caps = capability();
        expect(Token::Type::Dot, "'.'");
        return make_species(std::move(caps), inner());
      }
      case Token::Type::Ident: {
        if (is_keyword(peek(), "rec")) {
          CapPtr caps = capability();
          expect(Token::Type::Dot, "'.'");
          return make_species(std::move(caps), inner());
        }
        if (peek(1).type == Token::Type::Dot) {
          CapPtr caps = capability();  // a capability variable
          expect(Token::Type::Dot, "'.'");
          return make_species(std::move(caps), inner());
        }
        return make_species(cap_empty(), inner());
      }
      case Token::Type::LParen:
      case Token::Type::LBracket:
        return make_species(cap_empty(), inner());
      default:
        fail("expected a species", {"identifier", "'('", "'['", "'{'", "'rec'"});
    }
  }

  InnerPtr inner() {
    if (at(Token::Type::Ident)) {
      return inner_elem(advance().text);
    }
    if (accept(Token::Type::LParen)) {
      SpeciesPtr a = species();
      expect(Token::Type::Colon, "':'");
      SpeciesPtr b = species();
      expect(Token::Type::RParen, "')'");
      return inner_noncov(std::move(a), std::move(b));
    }
    if (accept(Token::Type::LBracket)) {
      if (accept(Token::Type::Quote)) {
        std::string q = expect(Token::Type::Ident, "modification type").text;
        SpeciesPtr a = species();
        expect(Token::Type::RBracket, "']'");
        return inner_mod(std::move(q), std::move(a));
      }
      SpeciesPtr a = species();
      SpeciesPtr b = species();
      expect(Token::Type::RBracket, "']'");
      return inner_bond(std::move(a), std::move(b));
    }
    fail("expected a species body", {"identifier", "'('", "'['"});
  }

  CapPtr capability() {
    DepthGuard guard(*this);
    if (at(Token::Type::Ident) && is_keyword(peek(), "rec")) {
      const Token& rec_tok = advance();
      std::string var = expect(Token::Type::Ident, "recursion variable").text;
      expect(Token::Type::Dot, "'.'");
      scope_.push_back(var);
      CapPtr body = capability();
      scope_.pop_back();
      // reject recursion whose unfolding can never reach a summand form
      std::set<std::string> spine{var};
      const Capability* cur = body.get();
      while (const auto* r = std::get_if<Capability::Rec>(&cur->node)) {
        spine.insert(r->var);
        cur = r->body.get();
      }
      if (const auto* v = std::get_if<Capability::Var>(&cur->node))
        if (spine.count(v->name))
          throw ParseError("non-contractive recursion: rec " + var, rec_tok.span);
      return cap_rec(std::move(var), std::move(body));
    }
    if (at(Token::Type::Ident)) {
      const Token& t = advance();
      if (!bound(t.text))
        throw ParseError("unbound capability variable: " + t.text, t.span);
      return cap_var(t.text);
    }
    expect(Token::Type::LBrace, "'{'");
    if (accept(Token::Type::RBrace)) return cap_empty();
    std::vector<BasicCap> summands;
    summands.push_back(gamma());
    while (accept(Token::Type::Plus)) summands.push_back(gamma());
    expect(Token::Type::RBrace, "'}'");
    return cap_sum(std::move(summands));
  }

  BasicCap gamma() {
    NameSet promoters, inhibitors;
    if (accept(Token::Type::LBracket)) {
      expect(Token::Type::Plus, "'+'");
      if (!at(Token::Type::Semi)) {
        promoters.insert(name());
        while (accept(Token::Type::Comma)) promoters.insert(name());
      }
      expect(Token::Type::Semi, "';'");
      expect(Token::Type::Minus, "'-'");
      if (!at(Token::Type::RBracket)) {
        inhibitors.insert(name());
        while (accept(Token::Type::Comma)) inhibitors.insert(name());
      }
      expect(Token::Type::RBracket, "']'");
    }
    if (!at(Token::Type::Ident))
      fail("expected a capability operator", {"'bind'", "'cbind'", "'mod'", "'cleave'", "'conv'", "'prod'"});
    const Token& kw = advance();
    if (kw.text == "bind" || kw.text == "cbind") {
      expect(Token::Type::LParen, "'('");
      NamePtr partner = name();
      expect(Token::Type::RParen, "')'");
      CapPtr cont = capability();
      CapOp op = kw.text == "bind" ? CapOp(NonCovBind{std::move(partner), std::move(cont)})
                                   : CapOp(CovBind{std::move(partner), std::move(cont)});
      return BasicCap{std::move(promoters), std::move(inhibitors), std::move(op)};
    }
    if (kw.text == "mod") {
      expect(Token::Type::LParen, "'('");
      expect(Token::Type::Quote, "'''");
      std::string q = expect(Token::Type::Ident, "modification type").text;
      expect(Token::Type::RParen, "')'");
      CapPtr cont = capability();
      return BasicCap{std::move(promoters), std::move(inhibitors), CovMod{std::move(q), std::move(cont)}};
    }
    if (kw.text == "cleave") {
      expect(Token::Type::LParen, "'('");
      const Token& target_tok = peek();
      NamePtr target = name();
      expect(Token::Type::RParen, "')'");
      if (target->kind != Name::Kind::CovalentBond && target->kind != Name::Kind::CovalentMod)
        throw ParseError("cleave target must be a covalent bond or modification", target_tok.span);
      return BasicCap{std::move(promoters), std::move(inhibitors), Cleave{std::move(target)}};
    }
    if (kw.text == "conv" || kw.text == "prod") {
      expect(Token::Type::LParen, "'('");
      Process payload = process();
      expect(Token::Type::RParen, "')'");
      CapOp op = kw.text == "conv" ? CapOp(Convert{std::move(payload)}) : CapOp(Produce{std::move(payload)});
      return BasicCap{std::move(promoters), std::move(inhibitors), std::move(op)};
    }
    throw ParseError("unknown capability operator '" + kw.text + "'", kw.span,
                     {"'bind'", "'cbind'", "'mod'", "'cleave'", "'conv'", "'prod'"});
  }

  NamePtr name() {
    DepthGuard guard(*this);
    if (at(Token::Type::Ident)) return name_elem(advance().text);
    if (accept(Token::Type::LParen)) {
      NamePtr a = name();
      expect(Token::Type::Colon, "':'");
      NamePtr b = name();
      expect(Token::Type::RParen, "')'");
      return name_noncov(std::move(a), std::move(b));
    }
    if (accept(Token::Type::LBracket)) {
      if (accept(Token::Type::Quote)) {
        std::string q = expect(Token::Type::Ident, "modification type").text;
        NamePtr a = name();
        expect(Token::Type::RBracket, "']'");
        return name_mod(std::move(q), std::move(a));
      }
      NamePtr a = name();
      NamePtr b = name();
      expect(Token::Type::RBracket, "']'");
      return name_bond(std::move(a), std::move(b));
    }
    fail("expected a name", {"identifier", "'('", "'['"});
  }
};

}  // namespace

Process parse_process(std::string_view input) { return Parser(input).process_toplevel(); }

NamePtr parse_name(std::string_view input) { return Parser(input).name_toplevel(); }

}  // namespace mimc
