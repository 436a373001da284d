#include <random>

#include "chernform/forms.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chernform;

namespace {

ComplexForm basis_form(int k) { return ComplexForm::basis(static_cast<Basis>(k)); }

/// All strictly increasing tuples of one degree, as bitmasks.
std::vector<IndexTuple> tuples_of_degree(int d) {
  std::vector<IndexTuple> out;
  for (IndexTuple t = 0; t < 16; ++t) {
    if (tuple_degree(t) == d) out.push_back(t);
  }
  return out;
}

ComplexForm pure(IndexTuple t) {
  ComplexForm f(tuple_degree(t));
  f.set_coefficient(t, Complex(1, 0));
  return f;
}

std::vector<int> tuple_word(IndexTuple t) {
  std::vector<int> w;
  for (int k = 0; k < kBasisCount; ++k) {
    if (t & (1u << k)) w.push_back(k);
  }
  return w;
}

ComplexForm random_form(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  ComplexForm f(degree);
  for (IndexTuple t : tuples_of_degree(degree)) {
    f.set_coefficient(t, Complex(coeff(rng), coeff(rng)));
  }
  return f;
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("wedge basis examples") {
    ComplexForm dz1 = basis_form(0), dzbar1 = basis_form(1);
    ComplexForm dz2 = basis_form(2), dzbar2 = basis_form(3);

    CHECK(wedge(dz1, dz1).is_zero());

    ComplexForm ab = wedge(dz1, dzbar1);
    CHECK(ab.coefficient(0b0011) == Complex(1, 0));
    ComplexForm ba = wedge(dzbar1, dz1);
    CHECK(ba.coefficient(0b0011) == Complex(-1, 0));

    // (2 dz1) ^ (3 dz2 ^ dzbar2) = 6 (dz1, dz2, dzbar2)
    ComplexForm lhs = wedge(dz1 * Complex(2, 0), wedge(dz2, dzbar2) * Complex(3, 0));
    CHECK(lhs.degree() == 3);
    CHECK(lhs.coefficient(0b1101) == Complex(6, 0));
    // independent sign: sorting the word {0, 2, 3}
    CHECK(oracles::word_sign({0, 2, 3}) == 1);
  }

  TEST_CASE("wedge signs match the brute-force parity oracle on all tuple pairs") {
    for (IndexTuple a = 0; a < 16; ++a) {
      for (IndexTuple b = 0; b < 16; ++b) {
        ComplexForm w = wedge(pure(a), pure(b));
        std::vector<int> word = tuple_word(a);
        for (int k : tuple_word(b)) word.push_back(k);
        int expected = oracles::word_sign(word);
        if (expected == 0) {
          CHECK(w.is_zero());
        } else {
          CHECK(w.coefficient(static_cast<IndexTuple>(a | b)) ==
                Complex(static_cast<double>(expected), 0));
        }
      }
    }
  }

  TEST_CASE("graded commutation on all pure basis pairs") {
    for (IndexTuple a = 0; a < 16; ++a) {
      for (IndexTuple b = 0; b < 16; ++b) {
        int p = tuple_degree(a), q = tuple_degree(b);
        double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
        CHECK(wedge(pure(a), pure(b)) == wedge(pure(b), pure(a)) * Complex(sign, 0));
      }
    }
  }

  TEST_CASE("associativity on randomized forms") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> deg(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
      ComplexForm a = random_form(rng, deg(rng));
      ComplexForm b = random_form(rng, deg(rng));
      ComplexForm c = random_form(rng, deg(rng));
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));  // integer coefficients: exact
    }
  }

  TEST_CASE("associativity is exact over Gaussian rationals") {
    using RC = oracles::RationalComplex;
    using RForm = BasicForm<RC>;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-5, 5);
    auto random_rational_form = [&](int degree) {
      RForm f(degree);
      for (IndexTuple t : tuples_of_degree(degree)) {
        f.set_coefficient(t, RC(Rational(num(rng), 3), Rational(num(rng), 2)));
      }
      return f;
    };
    for (int trial = 0; trial < 50; ++trial) {
      RForm a = random_rational_form(1);
      RForm b = random_rational_form(1);
      RForm c = random_rational_form(2);
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
  }

  TEST_CASE("degree overflow yields the zero top form") {
    ComplexForm top = wedge(wedge(basis_form(0), basis_form(1)), wedge(basis_form(2), basis_form(3)));
    CHECK(top.degree() == 4);
    ComplexForm over = wedge(top, basis_form(0));
    CHECK(over.degree() == 4);
    CHECK(over.is_zero());
  }

  TEST_CASE("trace examples") {
    MatrixForm ident(3, 0);
    for (int i = 0; i < 3; ++i) ident.set_entry(i, i, ComplexForm::scalar(Complex(1, 0)));
    CHECK(trace(ident).coefficient(0) == Complex(3, 0));

    ComplexForm omega = wedge(basis_form(0), basis_form(1));
    MatrixForm diag(2, 2);
    diag.set_entry(0, 0, omega);
    diag.set_entry(1, 1, omega * Complex(-1, 0));
    CHECK(trace(diag).is_zero());

    MatrixForm off(2, 2);
    off.set_entry(0, 1, omega);
    off.set_entry(1, 0, omega);
    CHECK(trace(off).is_zero());
  }

  TEST_CASE("mat_wedge examples") {
    ComplexForm f = basis_form(0) * Complex(2, 1);
    ComplexForm g = basis_form(2);

    MatrixForm a1(1, 1), b1(1, 1);
    a1.set_entry(0, 0, f);
    b1.set_entry(0, 0, g);
    CHECK(mat_wedge(a1, b1).entry(0, 0) == wedge(f, g));

    MatrixForm zero(2, 1), b2(2, 1);
    b2.set_entry(0, 0, basis_form(1));
    b2.set_entry(1, 1, basis_form(3));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(mat_wedge(zero, b2).entry(i, j).is_zero());
      }
    }

    MatrixForm d1(2, 1), d2(2, 1);
    d1.set_entry(0, 0, basis_form(0));
    d1.set_entry(1, 1, basis_form(1));
    d2.set_entry(0, 0, basis_form(2));
    d2.set_entry(1, 1, basis_form(3));
    MatrixForm prod = mat_wedge(d1, d2);
    CHECK(prod.entry(0, 0) == wedge(basis_form(0), basis_form(2)));
    CHECK(prod.entry(1, 1) == wedge(basis_form(1), basis_form(3)));
    CHECK(prod.entry(0, 1).is_zero());
    CHECK(prod.entry(1, 0).is_zero());

    MatrixForm r3(3, 1);
    CHECK_THROWS_AS(mat_wedge(d1, r3), DimensionError);
  }

  TEST_CASE("trace commutes through mat_wedge for degree-2 matrices") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> rank(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
      int r = rank(rng);
      MatrixForm a(r, 2), b(r, 2);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          a.set_entry(i, j, random_form(rng, 2));
          b.set_entry(i, j, random_form(rng, 2));
        }
      }
      CHECK(trace(mat_wedge(a, b)) == trace(mat_wedge(b, a)));
    }
  }

  TEST_CASE("top coefficient examples") {
    ComplexForm top(4);
    top.set_coefficient(kTopTuple, Complex(5, 0));
    CHECK(top_coefficient(top) == Complex(5, 0));

    CHECK(top_coefficient(wedge(basis_form(0), basis_form(1))) == Complex(0, 0));

    // dz2 ^ dzbar2 ^ dz1 ^ dzbar1 assembled via wedge -> +1
    ComplexForm assembled =
        wedge(wedge(wedge(basis_form(2), basis_form(3)), basis_form(0)), basis_form(1));
    CHECK(top_coefficient(assembled) == Complex(1, 0));
    CHECK(oracles::word_sign({2, 3, 0, 1}) == 1);
  }

  TEST_CASE("top coefficient of a wedge is bilinear") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
      ComplexForm a1 = random_form(rng, 2), a2 = random_form(rng, 2), b = random_form(rng, 2);
      Complex lam(3, -2);
      Complex lhs = top_coefficient(wedge(a1 + a2 * lam, b));
      Complex rhs = top_coefficient(wedge(a1, b)) + lam * top_coefficient(wedge(a2, b));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}
