#pragma once

// A small scripting language over the tower and invariant calculators.
//
//   program := stmt* ;
//   stmt    := "let" IDENT "=" expr | "print" [STRING ","] expr
//            | "assert" expr ("==" | "<=" | ">=") expr ;
//   expr    := term (("+" | "-") term)* ;
//   term    := factor (("*" | "/") factor)* ;
//   factor  := INT | IDENT | call | "(" expr ")" | "-" factor ;
//   call    := IDENT "(" [expr ("," expr)*] ")" | "basket" "[" pair ("," pair)* "]" ;
//   pair    := "(" INT "," INT ")" ;
//
// '#' starts a comment that runs to the end of the line.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ngeo::dsl {

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  SourcePos pos;

  /// "line:col: error: message"
  std::string str() const;
};

struct Expr {
  enum class Kind { Int, Ident, Call, Basket, Negate, Binary };

  Kind kind = Kind::Int;
  SourcePos pos;
  std::string text;  // decimal digits (Int), name (Ident, Call)
  char op = 0;       // '+', '-', '*', '/' (Binary)
  std::vector<Expr> args;
  std::vector<std::pair<std::string, std::string>> pairs;  // Basket literal entries

  /// Structural equality; positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct Stmt {
  enum class Kind { Let, Print, Assert };

  Kind kind = Kind::Let;
  SourcePos pos;
  std::string name;                  // Let
  std::optional<std::string> label;  // Print
  std::string comparison;            // Assert: "==", "<=", ">="
  Expr expr;
  Expr rhs;                          // Assert

  friend bool operator==(const Stmt& a, const Stmt& b);
};

struct Program {
  std::vector<Stmt> statements;
  friend bool operator==(const Program&, const Program&) = default;
};

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return program.has_value() && diagnostics.empty(); }
};

ParseResult parse(std::string_view text);

/// Canonical source text; parse(pretty_print(p)) yields a program equal to p.
std::string pretty_print(const Program& program);
std::string pretty_print(const Expr& expr);

struct EvalResult {
  std::vector<std::string> output;  // one entry per executed print
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Runs statements in order and stops at the first failure.
EvalResult evaluate(const Program& program);

/// parse + evaluate; parse diagnostics are returned unchanged.
EvalResult run_script(std::string_view text);

}  // namespace ngeo::dsl
