#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>

#include "chernform/errors.hpp"

namespace chernform {

using Complex = std::complex<double>;

/// Real coordinates on the patch; z1 = x1 + i*y1, z2 = x2 + i*y2.
enum class Coordinate : int { x1 = 0, y1 = 1, x2 = 2, y2 = 3 };

struct Point4 {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  double operator[](Coordinate c) const {
    switch (c) {
      case Coordinate::x1: return x1;
      case Coordinate::y1: return y1;
      case Coordinate::x2: return x2;
      default: return y2;
    }
  }
  double& operator[](Coordinate c) {
    switch (c) {
      case Coordinate::x1: return x1;
      case Coordinate::y1: return y1;
      case Coordinate::x2: return x2;
      default: return y2;
    }
  }
};

/// Immutable scalar expression in the four real coordinates, evaluating to a
/// complex number. Carrier for metric entries; parsed from the scenario
/// syntax: infix + - * / ^, functions exp sin cos log, complex(re, im),
/// variables x1 y1 x2 y2, imaginary unit literal i.
class Expression {
 public:
  Expression();  // constant 0

  static Expression constant(Complex value);
  static Expression variable(Coordinate c);

  /// Parses the scenario expression syntax. Throws ParseError with a 1-based
  /// column into `text` (line is always 1; callers embedding expressions in
  /// files rewrap with their own line numbers).
  static Expression parse(std::string_view text);

  /// Evaluates at a point. Throws EvalFault on division by zero and on log of
  /// zero or of a nonpositive real.
  Complex evaluate(const Point4& p) const;

  /// Tree with every subexpression conjugated (i -> -i through all nodes).
  /// For f built from real constants and coordinates this is pointwise
  /// complex conjugation.
  Expression conjugated() const;

  /// Tree with coordinate `c` replaced by `replacement`.
  Expression substituted(Coordinate c, const Expression& replacement) const;

  Expression operator-() const;
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);

  friend Expression exp_of(const Expression& a);
  friend Expression sin_of(const Expression& a);
  friend Expression cos_of(const Expression& a);
  friend Expression log_of(const Expression& a);
  friend Expression pow_int(const Expression& base, int exponent);
  friend Expression complex_of(const Expression& re, const Expression& im);

  struct Node;  // defined in expression.cpp

 private:
  explicit Expression(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expression exp_of(const Expression& a);
Expression sin_of(const Expression& a);
Expression cos_of(const Expression& a);
Expression log_of(const Expression& a);
Expression pow_int(const Expression& base, int exponent);
Expression complex_of(const Expression& re, const Expression& im);

}  // namespace chernform
