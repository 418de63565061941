#include "ngeo/dsl.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace ngeo::dsl {

std::string Diagnostic::str() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
         (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.text == b.text && a.op == b.op && a.args == b.args && a.pairs == b.pairs;
}

bool operator==(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && a.label == b.label && a.comparison == b.comparison &&
         a.expr == b.expr && a.rhs == b.rhs;
}

namespace {

constexpr std::array<std::string_view, 17> kReserved{
    "let", "print", "assert", "hirzebruch", "proj_bundle", "double_cover", "K3", "pg", "l2",
    "line", "classify", "basket", "s", "l", "V", "E", "pull",
};

bool is_reserved(std::string_view name) {
  for (auto r : kReserved)
    if (r == name) return true;
  return false;
}

struct Token {
  enum class Kind { Int, Ident, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

struct SyntaxError : std::runtime_error {
  SourcePos pos;
  SyntaxError(std::string msg, SourcePos p) : std::runtime_error(std::move(msg)), pos(p) {}
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::String: return "string literal";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos start = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Token::Kind::End, "", start});
        return out;
      }
      char c = src_[i_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) digits += advance();
        out.push_back({Token::Kind::Int, digits, start});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
          name += advance();
        out.push_back({Token::Kind::Ident, name, start});
      } else if (c == '"') {
        advance();
        std::string text;
        for (;;) {
          if (i_ >= src_.size() || src_[i_] == '\n') throw SyntaxError("unterminated string literal", start);
          char ch = advance();
          if (ch == '"') break;
          if (ch == '\\') {
            if (i_ >= src_.size()) throw SyntaxError("unterminated string literal", start);
            char esc = advance();
            if (esc == 'n') text += '\n';
            else if (esc == '"' || esc == '\\') text += esc;
            else throw SyntaxError(std::string("unknown escape '\\") + esc + "'", start);
          } else {
            text += ch;
          }
        }
        out.push_back({Token::Kind::String, text, start});
      } else if ((c == '=' || c == '<' || c == '>') && i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
        std::string op{advance(), advance()};
        out.push_back({Token::Kind::Punct, op, start});
      } else if (std::string_view("=+-*/(),[]").find(c) != std::string_view::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, advance()), start});
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
      }
    }
  }

 private:
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    try {
      while (peek().kind != Token::Kind::End) p.statements.push_back(statement());
    } catch (const SyntaxError& err) {
      // Running out of input inside brackets is reported against the innermost opener.
      std::string msg = err.what();
      if (open_.empty() || peek().kind != Token::Kind::End || msg.rfind("unclosed", 0) == 0) throw;
      const Token& open = open_.back();
      throw SyntaxError("unclosed '" + open.text + "' opened at " + std::to_string(open.pos.line) + ":" +
                            std::to_string(open.pos.column) + ": " + msg,
                        err.pos);
    }
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  bool is_punct(const std::string& p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }

  Token expect_punct(const std::string& p, const std::string& context) {
    if (!is_punct(p)) throw SyntaxError("expected '" + p + "' " + context + ", found " + describe(peek()), peek().pos);
    return next();
  }

  Token open_bracket() {
    open_.push_back(next());
    return open_.back();
  }

  void expect_close(const std::string& close, const Token& open) {
    if (is_punct(close)) {
      next();
      open_.pop_back();
      return;
    }
    throw SyntaxError("unclosed '" + open.text + "' opened at " + std::to_string(open.pos.line) + ":" +
                          std::to_string(open.pos.column) + ": expected '" + close + "', found " + describe(peek()),
                      peek().pos);
  }

  Stmt statement() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || (t.text != "let" && t.text != "print" && t.text != "assert"))
      throw SyntaxError("expected 'let', 'print' or 'assert', found " + describe(t), t.pos);
    Token kw = next();
    Stmt s;
    s.pos = kw.pos;
    if (kw.text == "let") {
      s.kind = Stmt::Kind::Let;
      const Token& name = peek();
      if (name.kind != Token::Kind::Ident)
        throw SyntaxError("expected an identifier after 'let', found " + describe(name), name.pos);
      if (is_reserved(name.text)) throw SyntaxError("'" + name.text + "' is a reserved word", name.pos);
      s.name = next().text;
      expect_punct("=", "after the bound name");
      s.expr = expr();
    } else if (kw.text == "print") {
      s.kind = Stmt::Kind::Print;
      if (peek().kind == Token::Kind::String) {
        s.label = next().text;
        expect_punct(",", "after the print label");
      }
      s.expr = expr();
    } else {
      s.kind = Stmt::Kind::Assert;
      s.expr = expr();
      if (!(is_punct("==") || is_punct("<=") || is_punct(">=")))
        throw SyntaxError("expected '==', '<=' or '>=' in assert, found " + describe(peek()), peek().pos);
      s.comparison = next().text;
      s.rhs = expr();
    }
    return s;
  }

  Expr binary(char op, Expr lhs, Expr rhs, SourcePos pos) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.op = op;
    e.pos = pos;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_punct("+") || is_punct("-")) {
      Token op = next();
      lhs = binary(op.text[0], std::move(lhs), term(), op.pos);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (is_punct("*") || is_punct("/")) {
      Token op = next();
      lhs = binary(op.text[0], std::move(lhs), factor(), op.pos);
    }
    return lhs;
  }

  Expr factor() {
    const Token& t = peek();
    Expr e;
    e.pos = t.pos;
    if (t.kind == Token::Kind::Int) {
      e.kind = Expr::Kind::Int;
      e.text = next().text;
      return e;
    }
    if (is_punct("-")) {
      next();
      e.kind = Expr::Kind::Negate;
      e.args.push_back(factor());
      return e;
    }
    if (is_punct("(")) {
      Token open = open_bracket();
      Expr inner = expr();
      expect_close(")", open);
      return inner;
    }
    if (t.kind == Token::Kind::Ident) {
      Token name = next();
      e.text = name.text;
      if (name.text == "basket") {
        if (!is_punct("[")) throw SyntaxError("expected '[' after 'basket', found " + describe(peek()), peek().pos);
        Token open = open_bracket();
        e.kind = Expr::Kind::Basket;
        e.pairs.push_back(pair());
        while (is_punct(",")) {
          next();
          e.pairs.push_back(pair());
        }
        expect_close("]", open);
        return e;
      }
      if (is_punct("(")) {
        Token open = open_bracket();
        e.kind = Expr::Kind::Call;
        if (!is_punct(")")) {
          e.args.push_back(expr());
          while (is_punct(",")) {
            next();
            e.args.push_back(expr());
          }
        }
        expect_close(")", open);
        return e;
      }
      e.kind = Expr::Kind::Ident;
      return e;
    }
    if (t.kind == Token::Kind::End) throw SyntaxError("unexpected end of input, expected an expression", t.pos);
    throw SyntaxError("expected an expression, found " + describe(t), t.pos);
  }

  std::pair<std::string, std::string> pair() {
    if (!is_punct("(")) throw SyntaxError("expected '(' to start a basket point, found " + describe(peek()), peek().pos);
    Token open = open_bracket();
    auto integer = [&] {
      if (peek().kind != Token::Kind::Int)
        throw SyntaxError("expected an integer in basket point, found " + describe(peek()), peek().pos);
      return next().text;
    };
    std::string r = integer();
    expect_punct(",", "between r and b");
    std::string b = integer();
    expect_close(")", open);
    return {r, b};
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<Token> open_;
};

int precedence(const Expr& e) {
  if (e.kind != Expr::Kind::Binary) return 3;
  return (e.op == '+' || e.op == '-') ? 1 : 2;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  try {
    Parser parser(Lexer(text).tokenize());
    result.program = parser.program();
  } catch (const SyntaxError& err) {
    result.diagnostics.push_back({Diagnostic::Severity::Error, err.what(), err.pos});
  }
  return result;
}

std::string pretty_print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Int:
    case Expr::Kind::Ident:
      return e.text;
    case Expr::Kind::Call: {
      std::string out = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? ", " : "") + pretty_print(e.args[i]);
      return out + ")";
    }
    case Expr::Kind::Basket: {
      std::string out = "basket[";
      for (std::size_t i = 0; i < e.pairs.size(); ++i)
        out += (i ? ", (" : "(") + e.pairs[i].first + "," + e.pairs[i].second + ")";
      return out + "]";
    }
    case Expr::Kind::Negate: {
      const Expr& inner = e.args[0];
      bool wrap = inner.kind == Expr::Kind::Binary;
      return "-" + (wrap ? "(" + pretty_print(inner) + ")" : pretty_print(inner));
    }
    case Expr::Kind::Binary: {
      const int p = precedence(e);
      const Expr& lhs = e.args[0];
      const Expr& rhs = e.args[1];
      std::string l = pretty_print(lhs);
      std::string r = pretty_print(rhs);
      if (precedence(lhs) < p) l = "(" + l + ")";
      if (precedence(rhs) <= p) r = "(" + r + ")";
      return l + " " + e.op + " " + r;
    }
  }
  return "";
}

std::string pretty_print(const Program& program) {
  std::string out;
  for (const auto& s : program.statements) {
    switch (s.kind) {
      case Stmt::Kind::Let:
        out += "let " + s.name + " = " + pretty_print(s.expr);
        break;
      case Stmt::Kind::Print:
        out += "print ";
        if (s.label) out += quote(*s.label) + ", ";
        out += pretty_print(s.expr);
        break;
      case Stmt::Kind::Assert:
        out += "assert " + pretty_print(s.expr) + " " + s.comparison + " " + pretty_print(s.rhs);
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace ngeo::dsl
