#pragma once

// A small expression language for transition-function entries.
//
//   expr     := term (("+" | "-") term)*
//   term     := unary (("*" | "/") unary)*
//   unary    := "-" unary | power
//   power    := base ("^" exponent)?
//   exponent := "-"? integer ("^" exponent)?
//   base     := rational | identifier | func "(" expr ")" | "(" expr ")"
//   func     := "sin" | "cos" | "exp"
//   rational := integer ("/" positive-integer)?
//
// so "^" binds tighter than unary minus (-t^2 == -(t^2)) and is right
// associative.

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "lya/linalg.hpp"

namespace lya {

class Expr {
 public:
  struct Node;

  /// Throws SyntaxError carrying the byte offset of the problem.
  static Expr parse(std::string_view source);

  const std::string& source() const noexcept { return source_; }
  std::set<std::string> identifiers() const;

  /// Throws UnknownIdentifier if an identifier is not among `coords`.
  void bind(std::span<const std::string> coords) const;

  /// Exact evaluation. sin/cos/exp are only defined at 0 here; anything else,
  /// and division by zero, raises EvalError.
  Rational eval_exact(std::span<const std::string> coords, std::span<const Rational> point) const;
  double eval_float(std::span<const std::string> coords, std::span<const double> point) const;

 private:
  Expr(std::string source, std::shared_ptr<const Node> root) : source_(std::move(source)), root_(std::move(root)) {}

  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace lya
