#include <cmath>
#include <random>

#include "chernform/detformula.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chernform;

namespace {

Patch unit_patch() {
  Patch p;
  p.x1 = p.y1 = p.x2 = p.y2 = CoordinateRange{0.0, 1.0};
  return p;
}

HermitianMetricField rank1(const std::string& h11, MetricMode mode = MetricMode::product) {
  return HermitianMetricField(1, {Expression::parse(h11)}, mode);
}

HermitianMetricField rank2(const std::string& h11, const std::string& h12, const std::string& h21,
                           const std::string& h22, MetricMode mode = MetricMode::product) {
  return HermitianMetricField(
      2,
      {Expression::parse(h11), Expression::parse(h12), Expression::parse(h21),
       Expression::parse(h22)},
      mode);
}

Eigen::Matrix2cd random_matrix2(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

SecondDerivativeBlock assemble(const Eigen::Matrix2cd& upper_left,
                               const Eigen::Matrix2cd& upper_right,
                               const Eigen::Matrix2cd& lower_left,
                               const Eigen::Matrix2cd& lower_right) {
  SecondDerivativeBlock b;
  b.entries.block<2, 2>(0, 0) = upper_left;
  b.entries.block<2, 2>(0, 2) = upper_right;
  b.entries.block<2, 2>(2, 0) = lower_left;
  b.entries.block<2, 2>(2, 2) = lower_right;
  return b;
}

Complex det4_oracle(const Eigen::Matrix4cd& m) {
  std::array<std::array<Complex, 4>, 4> a;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  }
  return oracles::leibniz_det4(a);
}

}  // namespace

TEST_SUITE("detformula") {
  TEST_CASE("density examples") {
    Patch patch = unit_patch();
    Point4 p{0.5, 0.5, 0.5, 0.5};

    CHECK(std::abs(det_formula_density(rank2("1", "0", "0", "1"), patch, p)) == 0.0);

    // all four mixed entries equal eps/4, so the mixed block is singular and
    // the density vanishes identically for this metric
    CHECK(std::abs(det_formula_density(rank1("1 + 0.1*x1*x2"), patch, p)) < 1e-12);

    // mixed block [[0, eps/2], [eps/2, 0]]: density (eps^2/4)^2 = 6.25e-6
    Complex d = det_formula_density(rank1("1 + 0.1*(x1*x2 + y1*y2)"), patch, p);
    CHECK(std::abs(d - Complex(6.25e-6, 0)) < 1e-12);
  }

  TEST_CASE("off-diagonal component determinants are conjugate") {
    Patch patch = unit_patch();
    HermitianMetricField m =
        rank2("2", "complex(0.04*(x1*x2 + y1*y2), 0.02*(x1*y2 - y1*x2))",
              "complex(0.04*(x1*x2 + y1*y2), 0.02*(y1*x2 - x1*y2))", "2");
    Point4 p{0.4, 0.6, 0.5, 0.3};
    Complex d12 = second_derivative_block(m, patch, p, 0, 1).entries.determinant();
    Complex d21 = second_derivative_block(m, patch, p, 1, 0).entries.determinant();
    CHECK(std::abs(d21 - std::conj(d12)) < 1e-12);
    // so the summed density is real
    Complex total = det_formula_density(m, patch, p);
    CHECK(std::abs(total.imag()) < 1e-12);
  }

  TEST_CASE("density is invariant under constant component relabeling") {
    Patch patch = unit_patch();
    HermitianMetricField m = rank2("2 + 0.1*(x1*x2 + y1*y2)", "0.04*(x1*x2 + y1*y2)",
                                   "0.04*(x1*x2 + y1*y2)", "2 + 0.1*(x1*x2 - y1*y2)");
    HermitianMetricField swapped = rank2("2 + 0.1*(x1*x2 - y1*y2)", "0.04*(x1*x2 + y1*y2)",
                                         "0.04*(x1*x2 + y1*y2)", "2 + 0.1*(x1*x2 + y1*y2)");
    Point4 p{0.45, 0.55, 0.6, 0.4};
    CHECK(std::abs(det_formula_density(m, patch, p) - det_formula_density(swapped, patch, p)) <
          1e-14);
  }

  TEST_CASE("block factorization: zero block") {
    SecondDerivativeBlock zero;
    zero.entries.setZero();
    BlockFactorization f = block_factorization_check(zero, 1e-9);
    CHECK(f.holds);
    CHECK(f.full_det == Complex(0, 0));
    CHECK(f.antidiagonal_product == Complex(0, 0));
    CHECK(f.shape == BlockFactorization::Shape::product);
  }

  TEST_CASE("block factorization: product and fibration shapes over 100 random blocks") {
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::Matrix2cd a = random_matrix2(rng);
      Eigen::Matrix2cd b = random_matrix2(rng);
      Eigen::Matrix2cd m = random_matrix2(rng);

      SecondDerivativeBlock product = assemble(Eigen::Matrix2cd::Zero(), b, a, Eigen::Matrix2cd::Zero());
      BlockFactorization fp = block_factorization_check(product, 1e-12);
      CHECK(fp.shape == BlockFactorization::Shape::product);
      CHECK(fp.holds);
      Complex expected = a.determinant() * b.determinant();
      CHECK(std::abs(fp.full_det - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
      CHECK(std::abs(fp.full_det - det4_oracle(product.entries)) < 1e-12);

      SecondDerivativeBlock fib = assemble(Eigen::Matrix2cd::Zero(), b, a, m);
      BlockFactorization ff = block_factorization_check(fib, 1e-12);
      CHECK(ff.shape == BlockFactorization::Shape::fibration);
      CHECK(ff.holds);  // the extra minor does not enter the expansion
      CHECK(std::abs(ff.full_det - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
      CHECK(std::abs(ff.full_det - det4_oracle(fib.entries)) < 1e-12);
    }
  }

  TEST_CASE("block factorization: general blocks report the discrepancy") {
    std::mt19937 rng(7);
    Eigen::Matrix2cd ul = random_matrix2(rng);
    SecondDerivativeBlock general =
        assemble(ul, random_matrix2(rng), random_matrix2(rng), random_matrix2(rng));
    BlockFactorization f = block_factorization_check(general, 1e-12);
    CHECK(f.shape == BlockFactorization::Shape::general);
    CHECK(f.residual == std::abs(f.full_det - f.antidiagonal_product));
  }

  TEST_CASE("hermitian-pattern blocks have nonnegative determinant |det A|^2") {
    std::mt19937 rng(314159);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::Matrix2cd a = random_matrix2(rng);
      SecondDerivativeBlock b =
          assemble(Eigen::Matrix2cd::Zero(), a.conjugate(), a, Eigen::Matrix2cd::Zero());
      BlockFactorization f = block_factorization_check(b, 1e-12);
      double expected = std::norm(a.determinant());
      CHECK(std::abs(f.full_det.imag()) < 1e-12);
      CHECK(f.full_det.real() >= -1e-15);
      CHECK(std::abs(f.full_det.real() - expected) < 1e-12);
    }
  }

  TEST_CASE("identity residual on the flat metric") {
    Patch patch = unit_patch();
    IdentityOptions opt;
    opt.resolutions = {2, 3, 4};
    IdentityReport r = identity_residual(rank2("1", "0", "0", "1"), patch, opt);
    CHECK(!r.out_of_hypothesis);
    CHECK(r.table.size() == 3);
    for (const auto& row : r.table) {
      CHECK(std::abs(row.det_integral) == 0.0);
      for (std::size_t c = 0; c < r.conventions.size(); ++c) {
        CHECK(row.max_residual[c] == 0.0);
        CHECK(std::abs(row.oracle_integral[c]) == 0.0);
      }
    }
    CHECK(r.samples.size() == 4u * 4 * 4 * 4);
  }

  TEST_CASE("identity residual flags the rank-1 convention gap") {
    Patch patch = unit_patch();
    IdentityOptions opt;
    opt.resolutions = {2, 3, 4};
    IdentityReport r = identity_residual(rank1("1 + 0.1*(x1*x2 + y1*y2)"), patch, opt);
    CHECK(!r.out_of_hypothesis);  // the metric is mixed-flat
    const auto& finest = r.table.back();
    // oracle c2 vanishes identically in rank 1; the det density does not
    std::size_t cw = 0;
    while (r.conventions[cw] != Convention::chernweil) ++cw;
    CHECK(std::abs(finest.oracle_integral[cw]) < 1e-15);
    CHECK(finest.det_integral.real() > 1e-7);
    CHECK(finest.max_residual[cw] == doctest::Approx(6.25e-6).epsilon(1e-4));
    // constant density: refinement does not move the integrals
    CHECK(finest.det_integral_change < 1e-12);
  }

  TEST_CASE("identity residual labels out-of-hypothesis metrics") {
    Patch patch = unit_patch();
    IdentityOptions opt;
    opt.resolutions = {2, 3, 4};
    IdentityReport r = identity_residual(rank1("1 + 0.1*(x1^2 + y1^2)"), patch, opt);
    CHECK(r.out_of_hypothesis);
    CHECK(r.table.size() == 3);  // still produced
  }

  TEST_CASE("identity residual validates its configuration") {
    Patch patch = unit_patch();
    IdentityOptions opt;
    opt.resolutions = {2, 3};
    CHECK_THROWS_AS(identity_residual(rank1("1"), patch, opt), ConfigError);
    opt.resolutions = {1, 2, 3};
    CHECK_THROWS_AS(identity_residual(rank1("1"), patch, opt), ConfigError);
    opt.resolutions = {2, 3, 4};
    opt.conventions = {};
    CHECK_THROWS_AS(identity_residual(rank1("1"), patch, opt), ConfigError);
  }

  TEST_CASE("positivity report on flat and mixed metrics") {
    Patch patch = unit_patch();
    PositivityOptions opt;

    PositivityReport flat = positivity_report(rank2("1", "0", "0", "1"), patch, GridSpec(3), opt);
    CHECK(flat.sign == SignFlag::zero);
    CHECK(flat.imag_ok);

    PositivityReport mixed =
        positivity_report(rank1("1 + 0.1*(x1*x2 + y1*y2)"), patch, GridSpec(3), opt);
    CHECK(mixed.sign == SignFlag::positive);
    CHECK(mixed.det_integral.value.real() > 1e-6);
    CHECK(std::abs(mixed.det_integral.value.imag()) <= 1e-9);
    CHECK(mixed.oracle_integrals.size() == 2);
  }

  TEST_CASE("positivity integral is invariant under mirror conjugation") {
    Patch patch;
    patch.x1 = patch.y1 = patch.x2 = patch.y2 = CoordinateRange{-0.5, 0.5};
    std::vector<Expression> entries = {Expression::parse("1 + 0.1*(x1*x2 + y1*y2)")};
    HermitianMetricField m(1, entries, MetricMode::product);
    std::vector<Expression> reflected = {
        entries[0]
            .substituted(Coordinate::y1, -Expression::variable(Coordinate::y1))
            .substituted(Coordinate::y2, -Expression::variable(Coordinate::y2))
            .conjugated()};
    HermitianMetricField g(1, reflected, MetricMode::product);
    PositivityOptions opt;
    PositivityReport a = positivity_report(m, patch, GridSpec(3), opt);
    PositivityReport b = positivity_report(g, patch, GridSpec(3), opt);
    CHECK(std::abs(a.det_integral.value - b.det_integral.value) < 1e-12);
  }
}
