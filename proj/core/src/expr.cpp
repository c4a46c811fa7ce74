#include "dcstring/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "dcstring/error.hpp"

namespace dcstring {

struct Expr::Node {
  Kind kind = Kind::kConst;
  double value = 0.0;  // literal for kConst, exponent for kPow
  Func func = Func::kSqrt;
  std::shared_ptr<const Node> lhs;  // sole operand of unary kinds
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Kind kind, double value, Expr::Func func, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->value = value;
  n->func = func;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr const_node(double v) { return make_node(Expr::Kind::kConst, v, Expr::Func::kSqrt, nullptr, nullptr); }

double apply(Expr::Func fn, double v) {
  switch (fn) {
    case Expr::Func::kSqrt: return std::sqrt(v);
    case Expr::Func::kSin: return std::sin(v);
    case Expr::Func::kCos: return std::cos(v);
    case Expr::Func::kExp: return std::exp(v);
    case Expr::Func::kLog: return std::log(v);
  }
  return std::nan("");
}

const char* func_name(Expr::Func fn) {
  switch (fn) {
    case Expr::Func::kSqrt: return "sqrt";
    case Expr::Func::kSin: return "sin";
    case Expr::Func::kCos: return "cos";
    case Expr::Func::kExp: return "exp";
    case Expr::Func::kLog: return "log";
  }
  return "?";
}

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case Expr::Kind::kConst: return n.value;
    case Expr::Kind::kVar: return x;
    case Expr::Kind::kNeg: return -eval_node(*n.lhs, x);
    case Expr::Kind::kAdd: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Expr::Kind::kSub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Expr::Kind::kMul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Expr::Kind::kDiv: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case Expr::Kind::kPow: {
      const double base = eval_node(*n.lhs, x);
      if (n.value == 2.0) return base * base;
      return std::pow(base, n.value);
    }
    case Expr::Kind::kCall: return apply(n.func, eval_node(*n.lhs, x));
  }
  return std::nan("");
}

bool same(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::kConst: return a->value == b->value;
    case Expr::Kind::kVar: return true;
    case Expr::Kind::kPow: return a->value == b->value && same(a->lhs, b->lhs);
    case Expr::Kind::kCall: return a->func == b->func && same(a->lhs, b->lhs);
    case Expr::Kind::kNeg: return same(a->lhs, b->lhs);
    default: return same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

void print(const Expr::Node& n, std::ostream& os) {
  switch (n.kind) {
    case Expr::Kind::kConst:
      if (n.value < 0) {
        os << '(' << format_number(n.value) << ')';
      } else {
        os << format_number(n.value);
      }
      return;
    case Expr::Kind::kVar: os << 'x'; return;
    case Expr::Kind::kNeg: os << "(-"; print(*n.lhs, os); os << ')'; return;
    case Expr::Kind::kPow:
      os << '(';
      print(*n.lhs, os);
      os << ")^(" << format_number(n.value) << ')';
      return;
    case Expr::Kind::kCall:
      os << func_name(n.func) << '(';
      print(*n.lhs, os);
      os << ')';
      return;
    default: break;
  }
  const char op = n.kind == Expr::Kind::kAdd   ? '+'
                  : n.kind == Expr::Kind::kSub ? '-'
                  : n.kind == Expr::Kind::kMul ? '*'
                                               : '/';
  os << '(';
  print(*n.lhs, os);
  os << ' ' << op << ' ';
  print(*n.rhs, os);
  os << ')';
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and folding

Expr::Expr() : node_(const_node(0.0)) {}

Expr Expr::constant(double value) { return Expr(const_node(value)); }

Expr Expr::variable() { return Expr(make_node(Kind::kVar, 0.0, Func::kSqrt, nullptr, nullptr)); }

Expr::Kind Expr::kind() const { return node_->kind; }

double Expr::eval(double x) const { return eval_node(*node_, x); }

double Expr::constant_value() const { return node_->value; }

std::string Expr::to_string() const {
  std::ostringstream os;
  print(*node_, os);
  return os.str();
}

bool operator==(const Expr& lhs, const Expr& rhs) { return same(lhs.node_, rhs.node_); }

// The operator builders fold as they go, so trees produced by derivative()
// never carry `0 * u` or `u + 0` chains into the evaluation loop.

Expr operator+(const Expr& lhs, const Expr& rhs) {
  if (lhs.is_constant() && rhs.is_constant()) return Expr::constant(lhs.constant_value() + rhs.constant_value());
  if (lhs.is_constant() && lhs.constant_value() == 0.0) return rhs;
  if (rhs.is_constant() && rhs.constant_value() == 0.0) return lhs;
  return Expr(make_node(Expr::Kind::kAdd, 0.0, Expr::Func::kSqrt, lhs.node_, rhs.node_));
}

Expr operator-(const Expr& lhs, const Expr& rhs) {
  if (lhs.is_constant() && rhs.is_constant()) return Expr::constant(lhs.constant_value() - rhs.constant_value());
  if (rhs.is_constant() && rhs.constant_value() == 0.0) return lhs;
  if (lhs.is_constant() && lhs.constant_value() == 0.0) return -rhs;
  return Expr(make_node(Expr::Kind::kSub, 0.0, Expr::Func::kSqrt, lhs.node_, rhs.node_));
}

Expr operator*(const Expr& lhs, const Expr& rhs) {
  if (lhs.is_constant() && rhs.is_constant()) return Expr::constant(lhs.constant_value() * rhs.constant_value());
  if (lhs.is_constant()) {
    if (lhs.constant_value() == 0.0) return Expr::constant(0.0);
    if (lhs.constant_value() == 1.0) return rhs;
    if (lhs.constant_value() == -1.0) return -rhs;
  }
  if (rhs.is_constant()) {
    if (rhs.constant_value() == 0.0) return Expr::constant(0.0);
    if (rhs.constant_value() == 1.0) return lhs;
    if (rhs.constant_value() == -1.0) return -lhs;
  }
  return Expr(make_node(Expr::Kind::kMul, 0.0, Expr::Func::kSqrt, lhs.node_, rhs.node_));
}

Expr operator/(const Expr& lhs, const Expr& rhs) {
  if (lhs.is_constant() && rhs.is_constant()) return Expr::constant(lhs.constant_value() / rhs.constant_value());
  if (lhs.is_constant() && lhs.constant_value() == 0.0) return Expr::constant(0.0);
  if (rhs.is_constant() && rhs.constant_value() == 1.0) return lhs;
  return Expr(make_node(Expr::Kind::kDiv, 0.0, Expr::Func::kSqrt, lhs.node_, rhs.node_));
}

Expr operator-(const Expr& operand) {
  if (operand.is_constant()) return Expr::constant(-operand.constant_value());
  if (operand.kind() == Expr::Kind::kNeg) return Expr(operand.node_->lhs);
  return Expr(make_node(Expr::Kind::kNeg, 0.0, Expr::Func::kSqrt, operand.node_, nullptr));
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr::constant(1.0);
  if (exponent == 1.0) return base;
  if (base.is_constant()) return Expr::constant(std::pow(base.constant_value(), exponent));
  return Expr(make_node(Expr::Kind::kPow, exponent, Expr::Func::kSqrt, base.node_, nullptr));
}

Expr call(Expr::Func fn, const Expr& arg) {
  if (arg.is_constant()) {
    const double v = apply(fn, arg.constant_value());
    if (std::isfinite(v)) return Expr::constant(v);
  }
  return Expr(make_node(Expr::Kind::kCall, 0.0, fn, arg.node_, nullptr));
}

Expr Expr::folded() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst:
    case Kind::kVar: return *this;
    case Kind::kNeg: return -Expr(n.lhs).folded();
    case Kind::kAdd: return Expr(n.lhs).folded() + Expr(n.rhs).folded();
    case Kind::kSub: return Expr(n.lhs).folded() - Expr(n.rhs).folded();
    case Kind::kMul: return Expr(n.lhs).folded() * Expr(n.rhs).folded();
    case Kind::kDiv: return Expr(n.lhs).folded() / Expr(n.rhs).folded();
    case Kind::kPow: return pow(Expr(n.lhs).folded(), n.value);
    case Kind::kCall: return call(n.func, Expr(n.lhs).folded());
  }
  return *this;
}

Expr Expr::derivative() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst: return constant(0.0);
    case Kind::kVar: return constant(1.0);
    case Kind::kNeg: return -Expr(n.lhs).derivative();
    case Kind::kAdd: return Expr(n.lhs).derivative() + Expr(n.rhs).derivative();
    case Kind::kSub: return Expr(n.lhs).derivative() - Expr(n.rhs).derivative();
    case Kind::kMul: {
      const Expr u(n.lhs), v(n.rhs);
      return u.derivative() * v + u * v.derivative();
    }
    case Kind::kDiv: {
      const Expr u(n.lhs), v(n.rhs);
      return (u.derivative() * v - u * v.derivative()) / pow(v, 2.0);
    }
    case Kind::kPow: {
      const Expr u(n.lhs);
      return constant(n.value) * pow(u, n.value - 1.0) * u.derivative();
    }
    case Kind::kCall: {
      const Expr u(n.lhs);
      const Expr du = u.derivative();
      switch (n.func) {
        case Func::kSqrt: return du / (constant(2.0) * *this);
        case Func::kSin: return call(Func::kCos, u) * du;
        case Func::kCos: return -(call(Func::kSin, u) * du);
        case Func::kExp: return *this * du;
        case Func::kLog: return du / u;
      }
    }
  }
  return constant(0.0);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    return pow(base, exponent());
  }

  // A signed primary, optionally raised further (right-associative); must fold to a number.
  double exponent() {
    skip_space();
    const std::size_t start = pos_;
    bool negate = false;
    while (true) {
      if (accept('-')) {
        negate = !negate;
      } else if (!accept('+')) {
        break;
      }
    }
    Expr e = power();
    Expr f = e.folded();
    if (!f.is_constant()) {
      pos_ = start;
      fail("exponent must be a numeric constant");
    }
    return negate ? -f.constant_value() : f.constant_value();
  }

  Expr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "x") return Expr::variable();
      Expr::Func fn;
      if (name == "sqrt") {
        fn = Expr::Func::kSqrt;
      } else if (name == "sin") {
        fn = Expr::Func::kSin;
      } else if (name == "cos") {
        fn = Expr::Func::kCos;
      } else if (name == "exp") {
        fn = Expr::Func::kExp;
      } else if (name == "log") {
        fn = Expr::Func::kLog;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      if (!accept('(')) fail("expected '(' after function name");
      Expr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return call(fn, arg);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view src) { return Parser(src).parse(); }

}  // namespace dcstring
