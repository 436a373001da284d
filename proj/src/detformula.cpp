#include "chernform/detformula.hpp"

#include <algorithm>
#include <cmath>

namespace chernform {

namespace {

constexpr Coordinate kAxes[4] = {Coordinate::x1, Coordinate::y1, Coordinate::x2, Coordinate::y2};

}  // namespace

Complex det_formula_density(const HermitianMetricField& metric, const Patch& patch,
                            const Point4& point, const FdConfig& fd) {
  Complex sum(0.0, 0.0);
  for (int i = 0; i < metric.rank(); ++i) {
    for (int j = 0; j < metric.rank(); ++j) {
      sum += second_derivative_block(metric, patch, point, i, j, fd).entries.determinant();
    }
  }
  return sum;
}

BlockFactorization block_factorization_check(const SecondDerivativeBlock& block,
                                             double tolerance) {
  BlockFactorization out;
  out.full_det = block.entries.determinant();
  out.antidiagonal_product = block.upper_right().determinant() * block.lower_left().determinant();
  out.residual = std::abs(out.full_det - out.antidiagonal_product);
  out.pure_z1_max = block.pure_z1().cwiseAbs().maxCoeff();
  out.pure_z2_max = block.pure_z2().cwiseAbs().maxCoeff();
  if (out.pure_z1_max <= tolerance) {
    out.shape = out.pure_z2_max <= tolerance ? BlockFactorization::Shape::product
                                             : BlockFactorization::Shape::fibration;
  } else {
    out.shape = BlockFactorization::Shape::general;
  }
  out.holds = out.residual <= tolerance;
  return out;
}

IdentityReport identity_residual(const HermitianMetricField& metric, const Patch& patch,
                                 const IdentityOptions& options) {
  patch.validate();
  if (options.resolutions.size() < 3) {
    throw ConfigError("identity residual needs a ladder of at least 3 resolutions");
  }
  std::vector<int> resolutions = options.resolutions;
  std::sort(resolutions.begin(), resolutions.end());
  for (int n : resolutions) {
    if (n < 2) throw ConfigError("identity residual needs >= 2 points per axis");
  }
  if (options.conventions.empty()) throw ConfigError("at least one convention is required");

  IdentityReport report;
  report.resolutions = resolutions;
  report.conventions = options.conventions;
  report.pattern = flatness_pattern_report(metric, patch, GridSpec(options.pattern_samples),
                                           options.pattern_tolerance, options.curvature.fd);
  report.out_of_hypothesis = !report.pattern.pass;

  const std::size_t nconv = options.conventions.size();
  const FdConfig& fd = options.curvature.fd;

  for (std::size_t level = 0; level < resolutions.size(); ++level) {
    GridSpec grid(resolutions[level]);
    bool finest = level + 1 == resolutions.size();

    std::array<std::vector<double>, 4> nodes, weights;
    for (int a = 0; a < 4; ++a) {
      const CoordinateRange& r = patch.range(kAxes[a]);
      bool periodic = patch.periodic(kAxes[a]);
      double margin = fd.margin(patch, kAxes[a]);
      nodes[a] = axis_nodes(r.lo, r.hi, grid.points[a], periodic, margin);
      weights[a] = axis_weights(r.lo, r.hi, grid.points[a], periodic, margin);
    }

    IdentityReport::ResolutionRow row;
    row.resolution = resolutions[level];
    row.oracle_integral.assign(nconv, Complex(0.0, 0.0));
    row.oracle_integral_change.assign(nconv, 0.0);
    row.max_residual.assign(nconv, 0.0);

    for (std::size_t i1 = 0; i1 < nodes[0].size(); ++i1) {
      for (std::size_t i2 = 0; i2 < nodes[1].size(); ++i2) {
        for (std::size_t i3 = 0; i3 < nodes[2].size(); ++i3) {
          for (std::size_t i4 = 0; i4 < nodes[3].size(); ++i4) {
            Point4 p{nodes[0][i1], nodes[1][i2], nodes[2][i3], nodes[3][i4]};
            double w = weights[0][i1] * weights[1][i2] * weights[2][i3] * weights[3][i4];
            ++report.total_points;
            try {
              Complex det = det_formula_density(metric, patch, p, fd);
              MatrixForm omega = curvature_form(metric, patch, p, options.curvature);

              IdentityReport::Sample sample;
              sample.point = p;
              sample.det_density = det;
              row.det_integral += w * det;
              for (std::size_t c = 0; c < nconv; ++c) {
                ChernDensities dens = densities_from_form(omega, options.conventions[c]);
                double resid = std::abs(det - dens.c2_density);
                row.oracle_integral[c] += w * dens.c2_density;
                row.max_residual[c] = std::max(row.max_residual[c], resid);
                sample.oracle_density.push_back(dens.c2_density);
                sample.residual.push_back(resid);
              }
              if (finest) report.samples.push_back(std::move(sample));
            } catch (const NumericError&) {
              ++report.failed_points;
            }
          }
        }
      }
    }

    if (!report.table.empty()) {
      const auto& prev = report.table.back();
      row.det_integral_change = std::abs(row.det_integral - prev.det_integral);
      for (std::size_t c = 0; c < nconv; ++c) {
        row.oracle_integral_change[c] = std::abs(row.oracle_integral[c] - prev.oracle_integral[c]);
      }
    }
    report.table.push_back(std::move(row));
  }

  if (report.failed_points * 100 > report.total_points) {
    throw NumericError("identity residual aborted: more than 1% of sample points failed");
  }
  return report;
}

PositivityReport positivity_report(const HermitianMetricField& metric, const Patch& patch,
                                   const GridSpec& grid, const PositivityOptions& options) {
  PositivityReport out;
  out.imag_tolerance = options.imag_tolerance;
  out.zero_tolerance = options.zero_tolerance;
  out.det_integral = integrate_on_grid(patch, grid, options.curvature.fd, [&](const Point4& p) {
    return det_formula_density(metric, patch, p, options.curvature.fd);
  });
  for (Convention conv : options.conventions) {
    DensityKind kind =
        conv == Convention::paper ? DensityKind::c2_paper : DensityKind::c2_chernweil;
    out.oracle_integrals.emplace_back(conv,
                                      integrate_density(metric, patch, grid, kind, options.curvature));
  }
  double re = out.det_integral.value.real();
  out.imag_ok = std::abs(out.det_integral.value.imag()) <= options.imag_tolerance;
  if (std::abs(re) <= options.zero_tolerance) {
    out.sign = SignFlag::zero;
  } else {
    out.sign = re > 0 ? SignFlag::positive : SignFlag::negative;
  }
  return out;
}

}  // namespace chernform
