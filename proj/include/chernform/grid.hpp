#pragma once

#include <array>
#include <vector>

#include "chernform/errors.hpp"

namespace chernform {

/// Sample counts per axis, ordered (x1, y1, x2, y2).
struct GridSpec {
  std::array<int, 4> points{8, 8, 8, 8};

  GridSpec() = default;
  explicit GridSpec(int n) : points{n, n, n, n} {}
  GridSpec(int n1, int n2, int n3, int n4) : points{n1, n2, n3, n4} {}

  long long total() const {
    long long t = 1;
    for (int n : points) t *= n;
    return t;
  }
};

/// Node positions along one axis. Non-periodic axes are inset by `margin` on
/// both sides so finite-difference stencils stay inside the range; periodic
/// axes cover one fundamental domain [lo, hi) uniformly.
inline std::vector<double> axis_nodes(double lo, double hi, int n, bool periodic, double margin) {
  if (n < 1) throw ConfigError("empty grid axis");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (periodic) {
    double period = hi - lo;
    for (int k = 0; k < n; ++k) out.push_back(lo + period * k / n);
    return out;
  }
  double a = lo + margin, b = hi - margin;
  if (a > b) throw StencilError("patch too small for the finite-difference stencil");
  if (n == 1) {
    out.push_back(0.5 * (a + b));
    return out;
  }
  for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  return out;
}

/// Trapezoid weights matching axis_nodes: uniform on periodic axes, halved at
/// the two endpoints otherwise.
inline std::vector<double> axis_weights(double lo, double hi, int n, bool periodic, double margin) {
  if (n < 2 && !periodic) throw ConfigError("integration needs >= 2 points per axis");
  if (n < 1) throw ConfigError("empty grid axis");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (periodic) {
    double h = (hi - lo) / n;
    for (auto& w : out) w = h;
    return out;
  }
  double a = lo + margin, b = hi - margin;
  if (a > b) throw StencilError("patch too small for the finite-difference stencil");
  double h = (b - a) / (n - 1);
  for (auto& w : out) w = h;
  out.front() = 0.5 * h;
  out.back() = 0.5 * h;
  return out;
}

}  // namespace chernform
