#include "polycirc/dsl.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "polycirc/error.hpp"

namespace polycirc {

namespace {

enum class Tok { Let, Name, Equals, Semi, Star, LParen, RParen, Const, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t value = 0;
  std::size_t pos = 0;
};

const std::set<std::string, std::less<>> kGeneratorWords = {
    "add", "zero", "mul", "one", "copy", "discard", "id", "swap", "eq", "neg", "const", "let"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, "", 0, start};
    const char c = text_[pos_];
    switch (c) {
      case '=': ++pos_; return {Tok::Equals, "=", 0, start};
      case ';': ++pos_; return {Tok::Semi, ";", 0, start};
      case '*': ++pos_; return {Tok::Star, "*", 0, start};
      case '(': ++pos_; return {Tok::LParen, "(", 0, start};
      case ')': ++pos_; return {Tok::RParen, ")", 0, start};
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "let") return {Tok::Let, word, 0, start};
      if (word == "const") return lex_const(start);
      return {Tok::Name, word, 0, start};
    }
    throw SyntaxError(start, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // "const" has been consumed; expects "(" UINT ")".
  Token lex_const(std::size_t start) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') throw SyntaxError(pos_, "expected '(' after const");
    ++pos_;
    skip_space();
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (digits == pos_ || ec != std::errc{}) throw SyntaxError(digits, "expected an unsigned integer");
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError(pos_, "expected ')' after constant");
    ++pos_;
    return {Tok::Const, "const", value, start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const DslOptions& opts)
      : lexer_(text), opts_(opts), env_(opts.environment) {
    advance();
  }

  std::vector<NamedCircuit> program() {
    std::vector<NamedCircuit> out;
    if (cur_.kind == Tok::End) throw SyntaxError(cur_.pos, "expected at least one definition");
    while (cur_.kind != Tok::End) {
      expect(Tok::Let, "'let'");
      if (cur_.kind != Tok::Name) throw SyntaxError(cur_.pos, "expected a name after 'let'");
      const Token name = cur_;
      if (kGeneratorWords.count(name.text) != 0) {
        throw SyntaxError(name.pos, "'" + name.text + "' is reserved");
      }
      if (env_.count(name.text) != 0) {
        throw SyntaxError(name.pos, "'" + name.text + "' is already defined");
      }
      advance();
      expect(Tok::Equals, "'='");
      Circuit c = expr();
      env_.emplace(name.text, c);
      out.push_back({name.text, c});
    }
    return out;
  }

  Circuit single_expr() {
    Circuit c = expr();
    if (cur_.kind != Tok::End) throw SyntaxError(cur_.pos, "unexpected '" + cur_.text + "'");
    return c;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      throw SyntaxError(cur_.pos, std::string("expected ") + what +
                                      (cur_.kind == Tok::End ? " at end of input" : ", found '" + cur_.text + "'"));
    }
    advance();
  }

  Circuit expr() {
    Circuit acc = term();
    while (cur_.kind == Tok::Semi) {
      const std::size_t pos = cur_.pos;
      advance();
      Circuit rhs = term();
      try {
        acc = compose(acc, rhs);
      } catch (const Error& e) {
        throw Error(ErrorCode::ShapeMismatch, std::string(e.what()) + " (at offset " +
                                                  std::to_string(pos) + ")");
      }
    }
    return acc;
  }

  Circuit term() {
    Circuit acc = factor();
    while (cur_.kind == Tok::Star) {
      advance();
      acc = tensor(acc, factor());
    }
    return acc;
  }

  Circuit factor() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::LParen: {
        advance();
        Circuit c = expr();
        expect(Tok::RParen, "')'");
        return c;
      }
      case Tok::Const: {
        advance();
        const Element v{t.value};
        if (opts_.semiring != nullptr && !opts_.semiring->contains(v)) {
          throw Error(ErrorCode::ConstOutOfRange, "const(" + std::to_string(t.value) +
                                                      ") outside carrier of " +
                                                      opts_.semiring->id() + " (at offset " +
                                                      std::to_string(t.pos) + ")");
        }
        return gen::constant(v);
      }
      case Tok::Name: {
        advance();
        if (auto g = builtin(t.text)) return *g;
        auto it = env_.find(t.text);
        if (it == env_.end()) {
          throw Error(ErrorCode::UnknownName, "unknown name '" + t.text + "' (at offset " +
                                                  std::to_string(t.pos) + ")");
        }
        return it->second;
      }
      case Tok::End:
        throw SyntaxError(t.pos, "unexpected end of input");
      default:
        throw SyntaxError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  static std::optional<Circuit> builtin(const std::string& w) {
    if (w == "add") return gen::add();
    if (w == "zero") return gen::zero();
    if (w == "mul") return gen::mul();
    if (w == "one") return gen::one();
    if (w == "copy") return gen::copy();
    if (w == "discard") return gen::discard();
    if (w == "id") return gen::id();
    if (w == "swap") return gen::twist();
    if (w == "eq") return gen::compare();
    if (w == "neg") return gen::negate();
    return std::nullopt;
  }

  Lexer lexer_;
  const DslOptions& opts_;
  std::map<std::string, Circuit> env_;
  Token cur_{Tok::End, "", 0, 0};
};

std::string generator_word(const Generator& g) {
  switch (g.tag()) {
    case GenTag::Add: return "add";
    case GenTag::Zero: return "zero";
    case GenTag::Mul: return "mul";
    case GenTag::One: return "one";
    case GenTag::Copy: return "copy";
    case GenTag::Discard: return "discard";
    case GenTag::Identity: return "id";
    case GenTag::Twist: return "swap";
    case GenTag::Const: return "const(" + std::to_string(g.value().code) + ")";
    case GenTag::Compare: return "eq";
    case GenTag::Negate: return "neg";
    case GenTag::Extension: return g.extension()->name;
  }
  return "?";
}

void render_expr(const Circuit& c, std::string& out);

void render_factor(const Circuit& c, std::string& out) {
  if (c.kind() == Circuit::Kind::Gen) {
    out += generator_word(c.generator());
    return;
  }
  out += '(';
  render_expr(c, out);
  out += ')';
}

void render_term(const Circuit& c, std::string& out) {
  if (c.kind() == Circuit::Kind::Par) {
    render_term(c.first(), out);
    out += " * ";
    render_factor(c.second(), out);
  } else {
    render_factor(c, out);
  }
}

void render_expr(const Circuit& c, std::string& out) {
  if (c.kind() == Circuit::Kind::Seq) {
    render_expr(c.first(), out);
    out += " ; ";
    if (c.second().kind() == Circuit::Kind::Seq) {
      render_factor(c.second(), out);
    } else {
      render_term(c.second(), out);
    }
  } else {
    render_term(c, out);
  }
}

}  // namespace

std::vector<NamedCircuit> parse_dsl(std::string_view text, const DslOptions& opts) {
  Parser p(text, opts);
  return p.program();
}

Circuit parse_dsl_expr(std::string_view text, const DslOptions& opts) {
  Parser p(text, opts);
  return p.single_expr();
}

std::string render_dsl(const Circuit& c) {
  std::string out;
  render_expr(c, out);
  return out;
}

std::string render_dsl_program(const std::vector<NamedCircuit>& circuits) {
  std::string out;
  for (const auto& [name, c] : circuits) {
    out += "let " + name + " = " + render_dsl(c) + "\n";
  }
  return out;
}

}  // namespace polycirc
