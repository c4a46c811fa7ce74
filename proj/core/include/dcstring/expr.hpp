#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace dcstring {

/// Immutable arithmetic expression in one variable `x`.
///
/// Grammar (highest precedence first):
///   primary := number | x | func '(' expr ')' | '(' expr ')'
///   power   := primary [ '^' exponent ]      exponent folds to a number; right-associative
///   unary   := '-' unary | '+' unary | power
///   term    := unary { ('*' | '/') unary }
///   expr    := term { ('+' | '-') term }
/// with func one of sqrt, sin, cos, exp, log.
///
/// Nodes are shared between expressions, so copies are cheap and thread-safe to read.
class Expr {
 public:
  enum class Kind { kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  enum class Func { kSqrt, kSin, kCos, kExp, kLog };

  struct Node;

  Expr();  // the constant 0
  static Expr constant(double value);
  static Expr variable();

  Kind kind() const;
  double eval(double x) const;

  /// Symbolic d/dx, constant-folded.
  Expr derivative() const;
  /// Folds constant subtrees and removes additive/multiplicative identities.
  Expr folded() const;

  bool is_constant() const { return kind() == Kind::kConst; }
  /// Value of a constant node; only meaningful when is_constant().
  double constant_value() const;

  std::string to_string() const;

  /// Structural equality (same tree shape and identical literals).
  friend bool operator==(const Expr& lhs, const Expr& rhs);

  friend Expr operator+(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& lhs, const Expr& rhs);
  friend Expr operator*(const Expr& lhs, const Expr& rhs);
  friend Expr operator/(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& operand);
  friend Expr pow(const Expr& base, double exponent);
  friend Expr call(Expr::Func fn, const Expr& arg);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, double exponent);
Expr call(Expr::Func fn, const Expr& arg);

/// Parses `src`; throws ParseError with the byte offset of the first bad token.
Expr parse_expression(std::string_view src);

}  // namespace dcstring
