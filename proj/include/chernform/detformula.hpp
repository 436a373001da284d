#pragma once

#include <utility>
#include <vector>

#include "chernform/curvature.hpp"

namespace chernform {

/// Coefficient of dz1^dzbar1^dz2^dzbar2 in the determinant formula:
/// the sum over all component pairs (i,j) of det of the 4x4 second-derivative
/// block of h_{ij}.
Complex det_formula_density(const HermitianMetricField& metric, const Patch& patch,
                            const Point4& point, const FdConfig& fd = {});

/// det(4x4 block) against det(upper-right 2x2) * det(lower-left 2x2). The
/// antidiagonal sign for 2x2 blocks is +1, and a nonzero lower-right block
/// does not enter the Laplace expansion when the upper-left block vanishes.
struct BlockFactorization {
  enum class Shape { product, fibration, general };

  Complex full_det{0, 0};
  Complex antidiagonal_product{0, 0};
  double residual = 0.0;
  Shape shape = Shape::general;
  double pure_z1_max = 0.0;  // largest |entry| of the upper-left 2x2 block
  double pure_z2_max = 0.0;  // largest |entry| of the lower-right 2x2 block
  bool holds = false;
};

BlockFactorization block_factorization_check(const SecondDerivativeBlock& block,
                                             double tolerance);

/// Pointwise and integrated comparison of the determinant-formula density
/// against the c2 oracle densities, across a ladder of grid resolutions.
struct IdentityOptions {
  std::vector<int> resolutions{4, 8, 16};  // per-axis points, ascending
  std::vector<Convention> conventions{Convention::paper, Convention::chernweil};
  CurvatureConfig curvature;
  double pattern_tolerance = 1e-6;
  int pattern_samples = 3;  // per-axis grid for the hypothesis check
};

struct IdentityReport {
  bool out_of_hypothesis = false;
  PatternReport pattern;
  std::vector<int> resolutions;
  std::vector<Convention> conventions;

  struct Sample {
    Point4 point;
    Complex det_density{0, 0};
    std::vector<Complex> oracle_density;  // parallel to conventions
    std::vector<double> residual;         // |det_density - oracle_density|
  };
  std::vector<Sample> samples;  // finest resolution only

  struct ResolutionRow {
    int resolution = 0;
    Complex det_integral{0, 0};
    double det_integral_change = 0.0;  // vs the previous (coarser) row
    std::vector<Complex> oracle_integral;
    std::vector<double> oracle_integral_change;
    std::vector<double> max_residual;
  };
  std::vector<ResolutionRow> table;

  std::size_t failed_points = 0;
  std::size_t total_points = 0;
};

IdentityReport identity_residual(const HermitianMetricField& metric, const Patch& patch,
                                 const IdentityOptions& options = {});

enum class SignFlag { positive, negative, zero };

inline const char* sign_name(SignFlag s) {
  switch (s) {
    case SignFlag::positive: return "positive";
    case SignFlag::negative: return "negative";
    default: return "zero";
  }
}

struct PositivityOptions {
  CurvatureConfig curvature;
  std::vector<Convention> conventions{Convention::paper, Convention::chernweil};
  double imag_tolerance = 1e-9;
  double zero_tolerance = 1e-9;
};

struct PositivityReport {
  Integral det_integral;
  SignFlag sign = SignFlag::zero;
  bool imag_ok = true;
  double imag_tolerance = 0.0;
  double zero_tolerance = 0.0;
  std::vector<std::pair<Convention, Integral>> oracle_integrals;
};

PositivityReport positivity_report(const HermitianMetricField& metric, const Patch& patch,
                                   const GridSpec& grid, const PositivityOptions& options = {});

}  // namespace chernform
