#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "chernform/expression.hpp"
#include "chernform/grid.hpp"

namespace chernform {

/// Flatness hypothesis the metric is declared under: product of two curves
/// (both pure blocks vanish) or a fibration over a curve (only the z1 block).
enum class MetricMode { product, fibration };

struct CoordinateRange {
  double lo = 0.0, hi = 1.0;
  double length() const { return hi - lo; }
};

/// Coordinate box the metric lives on. Each complex coordinate pair is either
/// a torus fundamental domain (periodic) or an open patch whose boundary eats
/// one stencil width.
struct Patch {
  CoordinateRange x1, y1, x2, y2;
  bool periodic_z1 = false;
  bool periodic_z2 = false;

  const CoordinateRange& range(Coordinate c) const {
    switch (c) {
      case Coordinate::x1: return x1;
      case Coordinate::y1: return y1;
      case Coordinate::x2: return x2;
      default: return y2;
    }
  }
  bool periodic(Coordinate c) const {
    return (c == Coordinate::x1 || c == Coordinate::y1) ? periodic_z1 : periodic_z2;
  }
  void validate() const {
    for (Coordinate c : {Coordinate::x1, Coordinate::y1, Coordinate::x2, Coordinate::y2}) {
      if (!(range(c).length() > 0.0)) throw ValidationError("patch interval is empty");
    }
  }
};

/// r x r field of expressions, Hermitian and positive definite on the declared
/// domain (validated by sampling, not by construction).
class HermitianMetricField {
 public:
  HermitianMetricField(int rank, std::vector<Expression> entries, MetricMode mode)
      : rank_(rank), mode_(mode), entries_(std::move(entries)) {
    if (rank_ < 1) throw ValidationError("metric rank must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(rank_) * rank_) {
      throw ValidationError("metric needs rank*rank entry expressions");
    }
  }

  int rank() const { return rank_; }
  MetricMode mode() const { return mode_; }
  const Expression& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * rank_ + j];
  }

 private:
  int rank_;
  MetricMode mode_;
  std::vector<Expression> entries_;
};

struct MetricValue {
  Eigen::MatrixXcd matrix;          // symmetrized: (M + M^H)/2
  double hermitian_deviation = 0.0; // max |M - M^H| entry before symmetrizing
};

/// Evaluates all entries at a point and enforces Hermiticity by averaging,
/// recording the deviation. Throws EvalFault naming the offending entry.
MetricValue evaluate(const HermitianMetricField& metric, const Point4& point);

/// Finite-difference configuration. The step is relative to each coordinate
/// range; one Richardson extrapolation level is always applied.
struct FdConfig {
  double step_rel = 1e-3;

  double step(const Patch& patch, Coordinate c) const { return step_rel * patch.range(c).length(); }
  /// Widest stencil offset along an axis; non-periodic grids are inset by it.
  double margin(const Patch& patch, Coordinate c) const { return step(patch, c); }
};

/// Derivative slots in the fixed order (d/dz1, d/dzbar1, d/dz2, d/dzbar2).
enum class WirtingerSlot : int { z1 = 0, z1bar = 1, z2 = 2, z2bar = 3 };

inline const char* slot_name(WirtingerSlot s) {
  switch (s) {
    case WirtingerSlot::z1: return "z1";
    case WirtingerSlot::z1bar: return "z1bar";
    case WirtingerSlot::z2: return "z2";
    default: return "z2bar";
  }
}

/// d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2 on entry (i,j),
/// by central differences with one Richardson level.
Complex wirtinger_derivative(const HermitianMetricField& metric, const Patch& patch,
                             const Point4& point, int i, int j, WirtingerSlot slot,
                             const FdConfig& fd = {});

/// All four first Wirtinger derivatives of one entry, sharing stencils,
/// indexed by WirtingerSlot.
std::array<Complex, 4> wirtinger_gradient(const HermitianMetricField& metric, const Patch& patch,
                                          const Point4& point, int i, int j,
                                          const FdConfig& fd = {});

/// All sixteen second Wirtinger derivatives of one entry, rows and columns in
/// slot order. Built from the real Hessian, so it is symmetric by
/// construction (mixed partials commute for smooth expressions).
struct SecondDerivativeBlock {
  Eigen::Matrix4cd entries;

  Complex at(WirtingerSlot a, WirtingerSlot b) const {
    return entries(static_cast<int>(a), static_cast<int>(b));
  }
  Eigen::Matrix2cd pure_z1() const { return entries.block<2, 2>(0, 0); }
  Eigen::Matrix2cd pure_z2() const { return entries.block<2, 2>(2, 2); }
  Eigen::Matrix2cd upper_right() const { return entries.block<2, 2>(0, 2); }
  Eigen::Matrix2cd lower_left() const { return entries.block<2, 2>(2, 0); }
};

SecondDerivativeBlock second_derivative_block(const HermitianMetricField& metric,
                                              const Patch& patch, const Point4& point, int i,
                                              int j, const FdConfig& fd = {});

/// Worst residual of one 2x2 block family over a grid sweep.
struct BlockResidual {
  double max_abs = 0.0;
  Point4 worst_point;
  int worst_i = 0, worst_j = 0;
  WirtingerSlot worst_row = WirtingerSlot::z1;
  WirtingerSlot worst_col = WirtingerSlot::z1;
  bool checked = false;  // counted toward pass/fail
  bool pass = true;
};

/// Flatness sweep result. pure_z1/pure_z2 are the diagonal 2x2 blocks of
/// every component's second-derivative matrix; `mixed` reports the
/// off-diagonal content and is informational in both modes.
struct PatternReport {
  MetricMode mode = MetricMode::product;
  double tolerance = 0.0;
  GridSpec grid;
  BlockResidual pure_z1, pure_z2, mixed;
  bool pass = false;
};

/// Per-sample observer for the flatness sweep (CSV emission); called once per
/// (point, component) in deterministic sweep order.
using BlockObserver =
    std::function<void(const Point4&, int i, int j, const SecondDerivativeBlock&)>;

PatternReport flatness_pattern_report(const HermitianMetricField& metric, const Patch& patch,
                                      const GridSpec& grid, double tolerance,
                                      const FdConfig& fd = {},
                                      const BlockObserver& observer = nullptr);

/// Sampled Hermiticity / positive-definiteness check (Sylvester leading
/// minors), run before any curvature computation by the CLI.
struct MetricValidation {
  bool hermitian_ok = true;
  double max_hermitian_deviation = 0.0;
  Point4 worst_hermitian_point;
  bool positive_definite_ok = true;
  double min_leading_minor = 0.0;
  int failing_minor = 0;  // 1-based order of the first failing minor, 0 if none
  Point4 worst_minor_point;
};

MetricValidation validate_metric(const HermitianMetricField& metric, const Patch& patch,
                                 int samples_per_axis = 3, double hermitian_tol = 1e-9);

}  // namespace chernform
