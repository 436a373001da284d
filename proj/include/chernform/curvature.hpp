#pragma once

#include <array>

#include "chernform/forms.hpp"
#include "chernform/metric.hpp"
#include "chernform/quadrature.hpp"

namespace chernform {

/// Chern-connection curvature at one point. Indices a, b run over the
/// holomorphic directions (z1, z2); lowered[a][b](j, k) = R_{j kbar, z^a, zbar^b}
/// and raised[a][b](i, j) = R^i_{j, z^a, zbar^b}.
struct CurvatureTensor {
  int rank = 0;
  std::array<std::array<Eigen::MatrixXcd, 2>, 2> lowered;
  std::array<std::array<Eigen::MatrixXcd, 2>, 2> raised;
};

struct CurvatureConfig {
  FdConfig fd;
  double condition_limit = 1e12;
};

/// Lowered tensor from the metric derivatives,
///   R_{j kbar a bbar} = -d_bbar d_a h_{j kbar}
///                       + sum_{p,q} (H^{-1})_{qp} (d_a h_{j q}) (d_bbar h_{p k}),
/// raised by the inverse metric. Throws IllConditionedError when the metric
/// matrix is numerically singular or not positive definite at the point.
CurvatureTensor curvature_at(const HermitianMetricField& metric, const Patch& patch,
                             const Point4& point, const CurvatureConfig& cfg = {});

/// The raised curvature assembled as a degree-2 matrix form
/// Omega^i_j = sum_{a,b} R^i_{j a bbar} dz^a ^ dzbar^b.
MatrixForm curvature_form(const HermitianMetricField& metric, const Patch& patch,
                          const Point4& point, const CurvatureConfig& cfg = {});

/// Normalization conventions for the Chern densities. `chernweil` scales the
/// curvature by i/(2 pi) inside the determinant expansion (so integrals over
/// closed manifolds are the integer characteristic numbers); `paper` applies
/// 1/(8 pi^2) to the raw trace combination tr(Omega^2) - tr^2(Omega).
enum class Convention { paper, chernweil };

inline const char* convention_name(Convention c) {
  return c == Convention::paper ? "paper" : "chernweil";
}

struct ChernDensities {
  Convention convention = Convention::chernweil;
  ComplexForm c1_form;       // degree-2 trace form under the convention's scaling
  Complex c2_density{0, 0};  // top-form coefficient of the c2 expansion
};

/// Densities from an already-assembled curvature form (pure form algebra).
ChernDensities densities_from_form(const MatrixForm& omega, Convention convention);

ChernDensities chern_densities(const HermitianMetricField& metric, const Patch& patch,
                               const Point4& point, Convention convention,
                               const CurvatureConfig& cfg = {});

enum class DensityKind { c2_paper, c2_chernweil };

/// Integrates the selected density over the patch (trapezoid tensor grid with
/// refinement-based error estimate).
Integral integrate_density(const HermitianMetricField& metric, const Patch& patch,
                           const GridSpec& grid, DensityKind kind,
                           const CurvatureConfig& cfg = {});

}  // namespace chernform
