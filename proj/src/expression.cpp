#include "chernform/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <variant>
#include <vector>

namespace chernform {

namespace {

enum class UnaryOp { neg, exp, sin, cos, log };
enum class BinaryOp { add, sub, mul, div };

}  // namespace

struct Expression::Node {
  struct Const {
    Complex value;
  };
  struct Var {
    Coordinate coord;
  };
  struct Unary {
    UnaryOp op;
    std::shared_ptr<const Node> child;
  };
  struct Binary {
    BinaryOp op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  struct PowInt {
    std::shared_ptr<const Node> base;
    int exponent;
  };
  struct ComplexOf {
    std::shared_ptr<const Node> re, im;
  };

  std::variant<Const, Var, Unary, Binary, PowInt, ComplexOf> data;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_const(Complex v) { return std::make_shared<Node>(Node{Node::Const{v}}); }
NodePtr make_var(Coordinate c) { return std::make_shared<Node>(Node{Node::Var{c}}); }
NodePtr make_unary(UnaryOp op, NodePtr child) {
  return std::make_shared<Node>(Node{Node::Unary{op, std::move(child)}});
}
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}});
}
NodePtr make_pow(NodePtr base, int exponent) {
  return std::make_shared<Node>(Node{Node::PowInt{std::move(base), exponent}});
}
NodePtr make_complex_of(NodePtr re, NodePtr im) {
  return std::make_shared<Node>(Node{Node::ComplexOf{std::move(re), std::move(im)}});
}

Complex eval_node(const Node& n, const Point4& p);

Complex eval_pow(const Node::PowInt& pw, const Point4& p) {
  Complex base = eval_node(*pw.base, p);
  int k = pw.exponent;
  bool invert = k < 0;
  unsigned long long e = invert ? -static_cast<long long>(k) : k;
  if (invert && base == Complex(0.0, 0.0)) {
    throw EvalFault("zero raised to a negative power");
  }
  Complex acc(1.0, 0.0);
  Complex sq = base;
  while (e > 0) {
    if (e & 1ull) acc *= sq;
    sq *= sq;
    e >>= 1;
  }
  return invert ? Complex(1.0, 0.0) / acc : acc;
}

Complex eval_node(const Node& n, const Point4& p) {
  return std::visit(
      [&](const auto& d) -> Complex {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Const>) {
          return d.value;
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          return Complex(p[d.coord], 0.0);
        } else if constexpr (std::is_same_v<T, Node::Unary>) {
          Complex v = eval_node(*d.child, p);
          switch (d.op) {
            case UnaryOp::neg: return -v;
            case UnaryOp::exp: return std::exp(v);
            case UnaryOp::sin: return std::sin(v);
            case UnaryOp::cos: return std::cos(v);
            case UnaryOp::log:
              if (v == Complex(0.0, 0.0)) throw EvalFault("log of zero");
              if (v.imag() == 0.0 && v.real() <= 0.0) throw EvalFault("log of a nonpositive real");
              return std::log(v);
          }
          return v;  // unreachable
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          Complex a = eval_node(*d.lhs, p);
          Complex b = eval_node(*d.rhs, p);
          switch (d.op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div:
              if (b == Complex(0.0, 0.0)) throw EvalFault("division by zero");
              return a / b;
          }
          return a;  // unreachable
        } else if constexpr (std::is_same_v<T, Node::PowInt>) {
          return eval_pow(d, p);
        } else {
          static_assert(std::is_same_v<T, Node::ComplexOf>);
          return eval_node(*d.re, p) + Complex(0.0, 1.0) * eval_node(*d.im, p);
        }
      },
      n.data);
}

NodePtr conjugate_node(const Node& n) {
  return std::visit(
      [&](const auto& d) -> NodePtr {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Const>) {
          return make_const(std::conj(d.value));
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          return make_var(d.coord);
        } else if constexpr (std::is_same_v<T, Node::Unary>) {
          // exp, sin, cos, log commute with conjugation away from the log cut,
          // which the evaluation guard already excludes.
          return make_unary(d.op, conjugate_node(*d.child));
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return make_binary(d.op, conjugate_node(*d.lhs), conjugate_node(*d.rhs));
        } else if constexpr (std::is_same_v<T, Node::PowInt>) {
          return make_pow(conjugate_node(*d.base), d.exponent);
        } else {
          static_assert(std::is_same_v<T, Node::ComplexOf>);
          // conj(a + i b) = conj(a) - i conj(b)
          return make_complex_of(conjugate_node(*d.re),
                                 make_unary(UnaryOp::neg, conjugate_node(*d.im)));
        }
      },
      n.data);
}

NodePtr substitute_node(const Node& n, Coordinate c, const NodePtr& repl) {
  return std::visit(
      [&](const auto& d) -> NodePtr {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Const>) {
          return make_const(d.value);
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          if (d.coord == c) return repl;
          return make_var(d.coord);
        } else if constexpr (std::is_same_v<T, Node::Unary>) {
          return make_unary(d.op, substitute_node(*d.child, c, repl));
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return make_binary(d.op, substitute_node(*d.lhs, c, repl),
                             substitute_node(*d.rhs, c, repl));
        } else if constexpr (std::is_same_v<T, Node::PowInt>) {
          return make_pow(substitute_node(*d.base, c, repl), d.exponent);
        } else {
          static_assert(std::is_same_v<T, Node::ComplexOf>);
          return make_complex_of(substitute_node(*d.re, c, repl),
                                 substitute_node(*d.im, c, repl));
        }
      },
      n.data);
}

// --- recursive-descent parser -----------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_ws();
    if (at_end()) throw error("empty expression");
    NodePtr e = parse_sum();
    skip_ws();
    if (!at_end()) throw error("unexpected trailing input");
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        lhs = make_binary(BinaryOp::add, lhs, parse_term());
      } else if (consume('-')) {
        lhs = make_binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        lhs = make_binary(BinaryOp::mul, lhs, parse_unary());
      } else if (consume('/')) {
        lhs = make_binary(BinaryOp::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (consume('-')) return make_unary(UnaryOp::neg, parse_unary());
    if (consume('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    for (;;) {
      skip_ws();
      if (!consume('^')) return base;
      base = make_pow(base, parse_int_exponent());
    }
  }

  int parse_int_exponent() {
    skip_ws();
    bool neg = false;
    if (consume('-')) neg = true;
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw error("exponent must be an integer literal");
    }
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (next() - '0');
      if (v > 1'000'000) throw error("exponent too large");
    }
    if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) {
      throw error("exponent must be an integer literal");
    }
    return static_cast<int>(neg ? -v : v);
  }

  NodePtr parse_atom() {
    skip_ws();
    if (at_end()) throw error("expected an operand");
    char c = peek();
    if (c == '(') {
      next();
      NodePtr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
    throw error(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) next();
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t mark = pos_;
      next();
      if (!at_end() && (peek() == '+' || peek() == '-')) next();
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) next();
      } else {
        pos_ = mark;  // not an exponent suffix
      }
    }
    std::string tok(text_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      throw ParseError("malformed number '" + tok + "'", 1, static_cast<int>(start) + 1);
    }
    return make_const(Complex(v, 0.0));
  }

  NodePtr parse_word() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) next();
    std::string word(text_.substr(start, pos_ - start));
    if (word == "i") return make_const(Complex(0.0, 1.0));
    if (word == "x1") return make_var(Coordinate::x1);
    if (word == "y1") return make_var(Coordinate::y1);
    if (word == "x2") return make_var(Coordinate::x2);
    if (word == "y2") return make_var(Coordinate::y2);
    if (word == "exp" || word == "sin" || word == "cos" || word == "log") {
      expect('(');
      NodePtr arg = parse_sum();
      expect(')');
      UnaryOp op = word == "exp"   ? UnaryOp::exp
                   : word == "sin" ? UnaryOp::sin
                   : word == "cos" ? UnaryOp::cos
                                   : UnaryOp::log;
      return make_unary(op, arg);
    }
    if (word == "complex") {
      expect('(');
      NodePtr re = parse_sum();
      skip_ws();
      expect(',');
      NodePtr im = parse_sum();
      expect(')');
      return make_complex_of(re, im);
    }
    throw ParseError("unknown identifier '" + word + "'", 1, static_cast<int>(start) + 1);
  }

  void expect(char c) {
    skip_ws();
    if (!consume(c)) throw error(std::string("expected '") + c + "'");
  }

  bool consume(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char next() { return text_[pos_++]; }

  ParseError error(const std::string& msg) const {
    return ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : node_(make_const(Complex(0.0, 0.0))) {}
Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(Complex value) { return Expression(make_const(value)); }
Expression Expression::variable(Coordinate c) { return Expression(make_var(c)); }

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

Complex Expression::evaluate(const Point4& p) const { return eval_node(*node_, p); }

Expression Expression::conjugated() const { return Expression(conjugate_node(*node_)); }

Expression Expression::substituted(Coordinate c, const Expression& replacement) const {
  return Expression(substitute_node(*node_, c, replacement.node_));
}

Expression Expression::operator-() const { return Expression(make_unary(UnaryOp::neg, node_)); }

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_binary(BinaryOp::add, a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_binary(BinaryOp::sub, a.node_, b.node_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_binary(BinaryOp::mul, a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_binary(BinaryOp::div, a.node_, b.node_));
}

Expression exp_of(const Expression& a) { return Expression(make_unary(UnaryOp::exp, a.node_)); }
Expression sin_of(const Expression& a) { return Expression(make_unary(UnaryOp::sin, a.node_)); }
Expression cos_of(const Expression& a) { return Expression(make_unary(UnaryOp::cos, a.node_)); }
Expression log_of(const Expression& a) { return Expression(make_unary(UnaryOp::log, a.node_)); }
Expression pow_int(const Expression& base, int exponent) {
  return Expression(make_pow(base.node_, exponent));
}
Expression complex_of(const Expression& re, const Expression& im) {
  return Expression(make_complex_of(re.node_, im.node_));
}

}  // namespace chernform
