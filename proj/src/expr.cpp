#include "lya/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <variant>
#include <vector>

#include "lya/errors.hpp"

namespace lya {

namespace {

enum class Func { Sin, Cos, Exp };

constexpr long kMaxExponent = 4096;

}  // namespace

struct Expr::Node {
  struct Literal {
    Rational value;
  };
  struct Ident {
    std::string name;
    std::size_t offset;
  };
  struct Neg {
    std::shared_ptr<const Node> operand;
  };
  struct Binary {
    char op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  struct Pow {
    std::shared_ptr<const Node> base;
    long exponent;
  };
  struct Call {
    Func func;
    std::shared_ptr<const Node> arg;
  };
  std::variant<Literal, Ident, Neg, Binary, Pow, Call> v;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_ws();
    if (eof()) throw SyntaxError("empty expression", pos_);
    NodePtr n = expr();
    skip_ws();
    if (!eof()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return n;
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (eof()) throw SyntaxError(std::string("expected '") + c + "' but reached end of input", pos_);
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  static NodePtr make(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      NodePtr rhs = term();
      lhs = make({Expr::Node::Binary{c, lhs, rhs}});
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      NodePtr rhs = unary();
      lhs = make({Expr::Node::Binary{c, lhs, rhs}});
    }
  }

  NodePtr unary() {
    if (accept('-')) return make({Expr::Node::Neg{unary()}});
    return power();
  }

  NodePtr power() {
    NodePtr b = base();
    if (accept('^')) return make({Expr::Node::Pow{b, exponent()}});
    return b;
  }

  long exponent() {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = accept('-');
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("exponent must be an integer", pos_);
    std::string digits = read_digits();
    if (digits.size() > 6 || std::stol(digits) > kMaxExponent) throw SyntaxError("exponent too large", start);
    long value = std::stol(digits);
    if (accept('^')) {
      const long inner = exponent();
      if (inner < 0) throw SyntaxError("nested negative exponent is not an integer power", start);
      long result = 1;
      for (long i = 0; i < inner; ++i) {
        result *= value;
        if (std::labs(result) > kMaxExponent) throw SyntaxError("exponent too large", start);
      }
      value = result;
    }
    return negative ? -value : value;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  NodePtr base() {
    skip_ws();
    if (eof()) throw SyntaxError("unexpected end of input", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    std::string num = read_digits();
    // "p/q" is a single literal when q is a positive integer; otherwise '/' is division.
    if (peek() == '/' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      const std::size_t save = pos_;
      ++pos_;
      std::string den = read_digits();
      if (mpz_class(den) != 0) return make({Expr::Node::Literal{parse_rational(num + "/" + den)}});
      pos_ = save;
    }
    return make({Expr::Node::Literal{parse_rational(num)}});
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string id(src_.substr(start, pos_ - start));
    std::optional<Func> f;
    if (id == "sin") f = Func::Sin;
    if (id == "cos") f = Func::Cos;
    if (id == "exp") f = Func::Exp;
    if (f) {
      skip_ws();
      if (peek() != '(') throw SyntaxError("function '" + id + "' needs an argument in parentheses", pos_);
      ++pos_;
      NodePtr arg = expr();
      expect(')');
      return make({Expr::Node::Call{*f, arg}});
    }
    return make({Expr::Node::Ident{std::move(id), start}});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void collect(const Expr::Node& n, std::set<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Node::Ident>) {
          out.insert(node.name);
        } else if constexpr (std::is_same_v<T, Expr::Node::Neg>) {
          collect(*node.operand, out);
        } else if constexpr (std::is_same_v<T, Expr::Node::Binary>) {
          collect(*node.lhs, out);
          collect(*node.rhs, out);
        } else if constexpr (std::is_same_v<T, Expr::Node::Pow>) {
          collect(*node.base, out);
        } else if constexpr (std::is_same_v<T, Expr::Node::Call>) {
          collect(*node.arg, out);
        }
      },
      n.v);
}

template <typename Scalar>
const Scalar& lookup(const Expr::Node::Ident& id, std::span<const std::string> coords, std::span<const Scalar> point) {
  if (coords.size() != point.size()) throw ShapeMismatch("point arity does not match the chart coordinates");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == id.name) return point[i];
  throw UnknownIdentifier("unknown identifier '" + id.name + "' at offset " + std::to_string(id.offset));
}

Rational eval_q(const Expr::Node& n, std::span<const std::string> coords, std::span<const Rational> point) {
  return std::visit(
      [&](const auto& node) -> Rational {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Node::Literal>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, Expr::Node::Ident>) {
          return lookup(node, coords, point);
        } else if constexpr (std::is_same_v<T, Expr::Node::Neg>) {
          return -eval_q(*node.operand, coords, point);
        } else if constexpr (std::is_same_v<T, Expr::Node::Binary>) {
          const Rational l = eval_q(*node.lhs, coords, point);
          const Rational r = eval_q(*node.rhs, coords, point);
          switch (node.op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            default:
              if (sgn(r) == 0) throw EvalError("division by zero");
              return l / r;
          }
        } else if constexpr (std::is_same_v<T, Expr::Node::Pow>) {
          const Rational b = eval_q(*node.base, coords, point);
          if (node.exponent < 0 && sgn(b) == 0) throw EvalError("zero raised to a negative power");
          const unsigned long k = static_cast<unsigned long>(std::labs(node.exponent));
          mpz_class num, den;
          mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
          mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
          Rational out = node.exponent < 0 ? Rational(den, num) : Rational(num, den);
          out.canonicalize();
          return out;
        } else {
          const Rational arg = eval_q(*node.arg, coords, point);
          if (sgn(arg) != 0) throw EvalError("transcendental function of a nonzero argument in exact mode");
          return node.func == Func::Sin ? Rational(0) : Rational(1);
        }
      },
      n.v);
}

double eval_d(const Expr::Node& n, std::span<const std::string> coords, std::span<const double> point) {
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Node::Literal>) {
          return node.value.get_d();
        } else if constexpr (std::is_same_v<T, Expr::Node::Ident>) {
          return lookup(node, coords, point);
        } else if constexpr (std::is_same_v<T, Expr::Node::Neg>) {
          return -eval_d(*node.operand, coords, point);
        } else if constexpr (std::is_same_v<T, Expr::Node::Binary>) {
          const double l = eval_d(*node.lhs, coords, point);
          const double r = eval_d(*node.rhs, coords, point);
          switch (node.op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            default:
              if (r == 0.0) throw EvalError("division by zero");
              return l / r;
          }
        } else if constexpr (std::is_same_v<T, Expr::Node::Pow>) {
          const double b = eval_d(*node.base, coords, point);
          if (node.exponent < 0 && b == 0.0) throw EvalError("zero raised to a negative power");
          return std::pow(b, static_cast<double>(node.exponent));
        } else {
          const double arg = eval_d(*node.arg, coords, point);
          switch (node.func) {
            case Func::Sin: return std::sin(arg);
            case Func::Cos: return std::cos(arg);
            case Func::Exp: return std::exp(arg);
          }
          return 0.0;
        }
      },
      n.v);
}

}  // namespace

Expr Expr::parse(std::string_view source) { return Expr(std::string(source), Parser(source).parse()); }

std::set<std::string> Expr::identifiers() const {
  std::set<std::string> out;
  collect(*root_, out);
  return out;
}

void Expr::bind(std::span<const std::string> coords) const {
  for (const auto& id : identifiers()) {
    bool found = false;
    for (const auto& c : coords) found = found || c == id;
    if (!found) throw UnknownIdentifier("unknown identifier '" + id + "' in '" + source_ + "'");
  }
}

Rational Expr::eval_exact(std::span<const std::string> coords, std::span<const Rational> point) const {
  return eval_q(*root_, coords, point);
}

double Expr::eval_float(std::span<const std::string> coords, std::span<const double> point) const {
  return eval_d(*root_, coords, point);
}

}  // namespace lya
