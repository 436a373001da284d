#include "chernform/curvature.hpp"

#include <cmath>

namespace chernform {

namespace {

constexpr double kPi = 3.14159265358979323846;

WirtingerSlot holomorphic_slot(int a) { return a == 0 ? WirtingerSlot::z1 : WirtingerSlot::z2; }
WirtingerSlot antiholomorphic_slot(int b) {
  return b == 0 ? WirtingerSlot::z1bar : WirtingerSlot::z2bar;
}

Basis holomorphic_basis(int a) { return a == 0 ? Basis::dz1 : Basis::dz2; }
Basis antiholomorphic_basis(int b) { return b == 0 ? Basis::dzbar1 : Basis::dzbar2; }

}  // namespace

CurvatureTensor curvature_at(const HermitianMetricField& metric, const Patch& patch,
                             const Point4& point, const CurvatureConfig& cfg) {
  const int r = metric.rank();
  MetricValue mv = evaluate(metric, point);
  const Eigen::MatrixXcd& h = mv.matrix;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  double lo = eig.eigenvalues().minCoeff();
  double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi > cfg.condition_limit * lo) {
    throw IllConditionedError("metric matrix is singular or not positive definite at the point");
  }
  Eigen::MatrixXcd g = h.inverse();

  // First derivatives per entry, then per holomorphic / antiholomorphic slot.
  std::array<Eigen::MatrixXcd, 2> dh, dhbar;
  for (auto& m : dh) m.resize(r, r);
  for (auto& m : dhbar) m.resize(r, r);
  std::array<std::array<Eigen::MatrixXcd, 2>, 2> d2h;
  for (auto& row : d2h) {
    for (auto& m : row) m.resize(r, r);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      std::array<Complex, 4> grad = wirtinger_gradient(metric, patch, point, i, j, cfg.fd);
      SecondDerivativeBlock block = second_derivative_block(metric, patch, point, i, j, cfg.fd);
      for (int a = 0; a < 2; ++a) {
        dh[a](i, j) = grad[static_cast<int>(holomorphic_slot(a))];
        dhbar[a](i, j) = grad[static_cast<int>(antiholomorphic_slot(a))];
        for (int b = 0; b < 2; ++b) {
          d2h[a][b](i, j) = block.at(holomorphic_slot(a), antiholomorphic_slot(b));
        }
      }
    }
  }

  CurvatureTensor out;
  out.rank = r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.lowered[a][b] = -d2h[a][b] + dh[a] * g * dhbar[b];
      out.raised[a][b] = (out.lowered[a][b] * g).transpose();
    }
  }
  return out;
}

MatrixForm curvature_form(const HermitianMetricField& metric, const Patch& patch,
                          const Point4& point, const CurvatureConfig& cfg) {
  CurvatureTensor t = curvature_at(metric, patch, point, cfg);
  MatrixForm omega(t.rank, 2);
  for (int i = 0; i < t.rank; ++i) {
    for (int j = 0; j < t.rank; ++j) {
      ComplexForm entry(2);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          entry += t.raised[a][b](i, j) * wedge(ComplexForm::basis(holomorphic_basis(a)),
                                                ComplexForm::basis(antiholomorphic_basis(b)));
        }
      }
      omega.set_entry(i, j, std::move(entry));
    }
  }
  return omega;
}

ChernDensities densities_from_form(const MatrixForm& omega, Convention convention) {
  ChernDensities out;
  out.convention = convention;
  if (convention == Convention::chernweil) {
    MatrixForm scaled = omega * Complex(0.0, 1.0 / (2.0 * kPi));
    ComplexForm c1 = trace(scaled);
    ComplexForm c2 = Complex(0.5, 0.0) * (wedge(c1, c1) - trace(mat_wedge(scaled, scaled)));
    out.c1_form = c1;
    out.c2_density = top_coefficient(c2);
  } else {
    ComplexForm tr = trace(omega);
    ComplexForm raw = trace(mat_wedge(omega, omega)) - wedge(tr, tr);
    out.c1_form = tr;
    out.c2_density = top_coefficient(raw) / (8.0 * kPi * kPi);
  }
  return out;
}

ChernDensities chern_densities(const HermitianMetricField& metric, const Patch& patch,
                               const Point4& point, Convention convention,
                               const CurvatureConfig& cfg) {
  return densities_from_form(curvature_form(metric, patch, point, cfg), convention);
}

Integral integrate_density(const HermitianMetricField& metric, const Patch& patch,
                           const GridSpec& grid, DensityKind kind, const CurvatureConfig& cfg) {
  Convention conv = kind == DensityKind::c2_paper ? Convention::paper : Convention::chernweil;
  return integrate_on_grid(patch, grid, cfg.fd, [&](const Point4& p) {
    return chern_densities(metric, patch, p, conv, cfg).c2_density;
  });
}

}  // namespace chernform
