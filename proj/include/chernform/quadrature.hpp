#pragma once

#include <functional>

#include "chernform/metric.hpp"

namespace chernform {

struct Integral {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;  // |full grid - half resolution|
  std::size_t failed_points = 0;
  std::size_t total_points = 0;
};

using PointDensity = std::function<Complex(const Point4&)>;

/// Tensor-product trapezoid rule over the patch in (x1, y1, x2, y2), inset by
/// the stencil margin on non-periodic axes. Points where the density throws a
/// NumericError are dropped (weight discarded); more than 1% such failures
/// abort the integration. Summation order is fixed, so results are
/// bit-reproducible.
Integral integrate_on_grid(const Patch& patch, const GridSpec& grid, const FdConfig& fd,
                           const PointDensity& density);

}  // namespace chernform
