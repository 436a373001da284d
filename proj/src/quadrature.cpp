#include "chernform/quadrature.hpp"

#include <algorithm>

namespace chernform {

namespace {

constexpr Coordinate kAxes[4] = {Coordinate::x1, Coordinate::y1, Coordinate::x2, Coordinate::y2};

struct SweepResult {
  Complex sum{0.0, 0.0};
  std::size_t failed = 0;
  std::size_t total = 0;
};

SweepResult sweep(const Patch& patch, const GridSpec& grid, const FdConfig& fd,
                  const PointDensity& density) {
  std::array<std::vector<double>, 4> nodes, weights;
  for (int a = 0; a < 4; ++a) {
    const CoordinateRange& r = patch.range(kAxes[a]);
    bool periodic = patch.periodic(kAxes[a]);
    double margin = fd.margin(patch, kAxes[a]);
    nodes[a] = axis_nodes(r.lo, r.hi, grid.points[a], periodic, margin);
    weights[a] = axis_weights(r.lo, r.hi, grid.points[a], periodic, margin);
  }

  SweepResult out;
  for (std::size_t i1 = 0; i1 < nodes[0].size(); ++i1) {
    for (std::size_t i2 = 0; i2 < nodes[1].size(); ++i2) {
      for (std::size_t i3 = 0; i3 < nodes[2].size(); ++i3) {
        for (std::size_t i4 = 0; i4 < nodes[3].size(); ++i4) {
          Point4 p{nodes[0][i1], nodes[1][i2], nodes[2][i3], nodes[3][i4]};
          double w = weights[0][i1] * weights[1][i2] * weights[2][i3] * weights[3][i4];
          ++out.total;
          try {
            out.sum += w * density(p);
          } catch (const NumericError&) {
            ++out.failed;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

Integral integrate_on_grid(const Patch& patch, const GridSpec& grid, const FdConfig& fd,
                           const PointDensity& density) {
  patch.validate();
  for (int n : grid.points) {
    if (n < 2) throw ConfigError("integration needs >= 2 points per axis");
  }

  SweepResult full = sweep(patch, grid, fd, density);

  GridSpec half;
  for (int a = 0; a < 4; ++a) half.points[a] = std::max(2, grid.points[a] / 2);
  SweepResult coarse = sweep(patch, half, fd, density);

  std::size_t total = full.total + coarse.total;
  std::size_t failed = full.failed + coarse.failed;
  if (failed * 100 > total) {
    throw NumericError("integration aborted: more than 1% of sample points failed");
  }

  Integral out;
  out.value = full.sum;
  out.error_estimate = std::abs(full.sum - coarse.sum);
  out.failed_points = failed;
  out.total_points = total;
  return out;
}

}  // namespace chernform
