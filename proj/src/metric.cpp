#include "chernform/metric.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace chernform {

namespace {

constexpr Coordinate kAxes[4] = {Coordinate::x1, Coordinate::y1, Coordinate::x2, Coordinate::y2};

double wrap_axis(double x, const CoordinateRange& r) {
  double period = r.length();
  double t = std::fmod(x - r.lo, period);
  if (t < 0) t += period;
  return r.lo + t;
}

/// One metric entry as a function of the four real coordinates, with periodic
/// wrapping and stencil bounds handling.
class EntryFn {
 public:
  EntryFn(const HermitianMetricField& metric, const Patch& patch, int i, int j)
      : metric_(metric), patch_(patch), i_(i), j_(j) {}

  Complex operator()(Point4 p) const {
    for (Coordinate c : kAxes) {
      const CoordinateRange& r = patch_.range(c);
      if (patch_.periodic(c)) {
        p[c] = wrap_axis(p[c], r);
      } else {
        double slack = 1e-9 * r.length();
        if (p[c] < r.lo - slack || p[c] > r.hi + slack) {
          throw StencilError("finite-difference stencil leaves the patch along " +
                             std::string(axis_name(c)));
        }
      }
    }
    try {
      return metric_.entry(i_, j_).evaluate(p);
    } catch (const EvalFault& e) {
      throw EvalFault(std::string(e.what()) + " in metric entry (" + std::to_string(i_ + 1) +
                      "," + std::to_string(j_ + 1) + ")");
    }
  }

 private:
  static const char* axis_name(Coordinate c) {
    switch (c) {
      case Coordinate::x1: return "x1";
      case Coordinate::y1: return "y1";
      case Coordinate::x2: return "x2";
      default: return "y2";
    }
  }

  const HermitianMetricField& metric_;
  const Patch& patch_;
  int i_, j_;
};

Point4 shifted(Point4 p, Coordinate c, double d) {
  p[c] += d;
  return p;
}

/// Central difference with one Richardson level: O(h^4).
Complex first_partial(const EntryFn& f, const Point4& p, Coordinate c, double h) {
  auto central = [&](double s) { return (f(shifted(p, c, s)) - f(shifted(p, c, -s))) / (2.0 * s); };
  Complex coarse = central(h);
  Complex fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

Complex second_partial_same(const EntryFn& f, const Point4& p, Coordinate c, double h, Complex f0) {
  auto central = [&](double s) {
    return (f(shifted(p, c, s)) - 2.0 * f0 + f(shifted(p, c, -s))) / (s * s);
  };
  Complex coarse = central(h);
  Complex fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

Complex second_partial_mixed(const EntryFn& f, const Point4& p, Coordinate u, Coordinate v,
                             double hu, double hv) {
  auto cross = [&](double su, double sv) {
    return (f(shifted(shifted(p, u, su), v, sv)) - f(shifted(shifted(p, u, su), v, -sv)) -
            f(shifted(shifted(p, u, -su), v, sv)) + f(shifted(shifted(p, u, -su), v, -sv))) /
           (4.0 * su * sv);
  };
  Complex coarse = cross(hu, hv);
  Complex fine = cross(0.5 * hu, 0.5 * hv);
  return (4.0 * fine - coarse) / 3.0;
}

struct SlotWeights {
  Coordinate x, y;
  Complex cx, cy;
};

SlotWeights slot_weights(WirtingerSlot s) {
  const Complex half(0.5, 0.0);
  const Complex half_i(0.0, 0.5);
  switch (s) {
    case WirtingerSlot::z1: return {Coordinate::x1, Coordinate::y1, half, -half_i};
    case WirtingerSlot::z1bar: return {Coordinate::x1, Coordinate::y1, half, half_i};
    case WirtingerSlot::z2: return {Coordinate::x2, Coordinate::y2, half, -half_i};
    default: return {Coordinate::x2, Coordinate::y2, half, half_i};
  }
}

int axis_index(Coordinate c) { return static_cast<int>(c); }

}  // namespace

MetricValue evaluate(const HermitianMetricField& metric, const Point4& point) {
  int r = metric.rank();
  Eigen::MatrixXcd m(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      try {
        m(i, j) = metric.entry(i, j).evaluate(point);
      } catch (const EvalFault& e) {
        throw EvalFault(std::string(e.what()) + " in metric entry (" + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + ")");
      }
    }
  }
  Eigen::MatrixXcd adj = m.adjoint();
  double dev = (m - adj).cwiseAbs().maxCoeff();
  return MetricValue{0.5 * (m + adj), dev};
}

Complex wirtinger_derivative(const HermitianMetricField& metric, const Patch& patch,
                             const Point4& point, int i, int j, WirtingerSlot slot,
                             const FdConfig& fd) {
  EntryFn f(metric, patch, i, j);
  SlotWeights w = slot_weights(slot);
  Complex dx = first_partial(f, point, w.x, fd.step(patch, w.x));
  Complex dy = first_partial(f, point, w.y, fd.step(patch, w.y));
  return w.cx * dx + w.cy * dy;
}

std::array<Complex, 4> wirtinger_gradient(const HermitianMetricField& metric, const Patch& patch,
                                          const Point4& point, int i, int j, const FdConfig& fd) {
  EntryFn f(metric, patch, i, j);
  std::array<Complex, 4> real_partials;
  for (int a = 0; a < 4; ++a) {
    real_partials[a] = first_partial(f, point, kAxes[a], fd.step(patch, kAxes[a]));
  }
  std::array<Complex, 4> out;
  for (int s = 0; s < 4; ++s) {
    SlotWeights w = slot_weights(static_cast<WirtingerSlot>(s));
    out[s] = w.cx * real_partials[axis_index(w.x)] + w.cy * real_partials[axis_index(w.y)];
  }
  return out;
}

SecondDerivativeBlock second_derivative_block(const HermitianMetricField& metric,
                                              const Patch& patch, const Point4& point, int i,
                                              int j, const FdConfig& fd) {
  EntryFn f(metric, patch, i, j);
  Complex f0 = f(point);

  // Real Hessian over (x1, y1, x2, y2); symmetric, so 10 distinct stencils.
  Eigen::Matrix4cd hess;
  for (int u = 0; u < 4; ++u) {
    double hu = fd.step(patch, kAxes[u]);
    hess(u, u) = second_partial_same(f, point, kAxes[u], hu, f0);
    for (int v = u + 1; v < 4; ++v) {
      double hv = fd.step(patch, kAxes[v]);
      hess(u, v) = second_partial_mixed(f, point, kAxes[u], kAxes[v], hu, hv);
      hess(v, u) = hess(u, v);
    }
  }

  SecondDerivativeBlock block;
  for (int a = 0; a < 4; ++a) {
    SlotWeights wa = slot_weights(static_cast<WirtingerSlot>(a));
    for (int b = 0; b < 4; ++b) {
      SlotWeights wb = slot_weights(static_cast<WirtingerSlot>(b));
      block.entries(a, b) = wa.cx * wb.cx * hess(axis_index(wa.x), axis_index(wb.x)) +
                            wa.cx * wb.cy * hess(axis_index(wa.x), axis_index(wb.y)) +
                            wa.cy * wb.cx * hess(axis_index(wa.y), axis_index(wb.x)) +
                            wa.cy * wb.cy * hess(axis_index(wa.y), axis_index(wb.y));
    }
  }
  return block;
}

namespace {

void fold_entry(BlockResidual& stat, double value, const Point4& p, int i, int j, int row,
                int col) {
  if (value > stat.max_abs) {
    stat.max_abs = value;
    stat.worst_point = p;
    stat.worst_i = i;
    stat.worst_j = j;
    stat.worst_row = static_cast<WirtingerSlot>(row);
    stat.worst_col = static_cast<WirtingerSlot>(col);
  }
}

}  // namespace

PatternReport flatness_pattern_report(const HermitianMetricField& metric, const Patch& patch,
                                      const GridSpec& grid, double tolerance, const FdConfig& fd,
                                      const BlockObserver& observer) {
  patch.validate();
  for (int n : grid.points) {
    if (n < 1) throw ConfigError("empty grid");
  }

  std::array<std::vector<double>, 4> nodes;
  for (int a = 0; a < 4; ++a) {
    const CoordinateRange& r = patch.range(kAxes[a]);
    nodes[a] = axis_nodes(r.lo, r.hi, grid.points[a], patch.periodic(kAxes[a]),
                          fd.margin(patch, kAxes[a]));
  }

  PatternReport report;
  report.mode = metric.mode();
  report.tolerance = tolerance;
  report.grid = grid;

  for (double vx1 : nodes[0]) {
    for (double vy1 : nodes[1]) {
      for (double vx2 : nodes[2]) {
        for (double vy2 : nodes[3]) {
          Point4 p{vx1, vy1, vx2, vy2};
          for (int i = 0; i < metric.rank(); ++i) {
            for (int j = 0; j < metric.rank(); ++j) {
              SecondDerivativeBlock block = second_derivative_block(metric, patch, p, i, j, fd);
              if (observer) observer(p, i, j, block);
              for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                  double v = std::abs(block.entries(a, b));
                  bool a1 = a < 2, b1 = b < 2;
                  if (a1 && b1) {
                    fold_entry(report.pure_z1, v, p, i, j, a, b);
                  } else if (!a1 && !b1) {
                    fold_entry(report.pure_z2, v, p, i, j, a, b);
                  } else {
                    fold_entry(report.mixed, v, p, i, j, a, b);
                  }
                }
              }
            }
          }
        }
      }
    }
  }

  report.pure_z1.checked = true;
  report.pure_z1.pass = report.pure_z1.max_abs <= tolerance;
  report.pure_z2.checked = metric.mode() == MetricMode::product;
  report.pure_z2.pass = report.pure_z2.max_abs <= tolerance;
  report.mixed.checked = false;
  report.mixed.pass = true;
  report.pass = report.pure_z1.pass && (!report.pure_z2.checked || report.pure_z2.pass);
  return report;
}

MetricValidation validate_metric(const HermitianMetricField& metric, const Patch& patch,
                                 int samples_per_axis, double hermitian_tol) {
  patch.validate();
  if (samples_per_axis < 1) throw ConfigError("validation needs >= 1 sample per axis");

  std::array<std::vector<double>, 4> nodes;
  for (int a = 0; a < 4; ++a) {
    const CoordinateRange& r = patch.range(kAxes[a]);
    nodes[a] = axis_nodes(r.lo, r.hi, samples_per_axis, patch.periodic(kAxes[a]), 0.0);
  }

  MetricValidation out;
  out.min_leading_minor = std::numeric_limits<double>::infinity();
  for (double vx1 : nodes[0]) {
    for (double vy1 : nodes[1]) {
      for (double vx2 : nodes[2]) {
        for (double vy2 : nodes[3]) {
          Point4 p{vx1, vy1, vx2, vy2};
          MetricValue mv = evaluate(metric, p);
          if (mv.hermitian_deviation > out.max_hermitian_deviation) {
            out.max_hermitian_deviation = mv.hermitian_deviation;
            out.worst_hermitian_point = p;
          }
          for (int k = 1; k <= metric.rank(); ++k) {
            double minor = mv.matrix.topLeftCorner(k, k).determinant().real();
            if (minor < out.min_leading_minor) {
              out.min_leading_minor = minor;
              out.worst_minor_point = p;
              if (minor <= 0.0) out.failing_minor = k;
            }
          }
        }
      }
    }
  }
  out.hermitian_ok = out.max_hermitian_deviation <= hermitian_tol;
  out.positive_definite_ok = out.min_leading_minor > 0.0;
  if (out.positive_definite_ok) out.failing_minor = 0;
  return out;
}

}  // namespace chernform
