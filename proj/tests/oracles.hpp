#pragma once

// Independent brute-force oracles used by the test suites. Everything here is
// deliberately naive and shares no code with the implementation under test.

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "chernform/lattice.hpp"

namespace oracles {

/// Sign of sorting a word of basis indices: 0 if any index repeats, otherwise
/// (-1)^{number of swaps} by literal bubble sort.
inline int word_sign(std::vector<int> word) {
  int swaps = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = 0; j + 1 + i < word.size(); ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        ++swaps;
      }
    }
  }
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k] == word[k + 1]) return 0;
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

/// Leibniz-sum determinant of a 4x4 matrix over any commutative ring.
template <typename T>
T leibniz_det4(const std::array<std::array<T, 4>, 4>& m) {
  std::array<int, 4> perm{0, 1, 2, 3};
  T sum = T(0);
  do {
    std::vector<int> word(perm.begin(), perm.end());
    int sign = word_sign(word);
    T term = m[0][static_cast<std::size_t>(perm[0])];
    term = term * m[1][static_cast<std::size_t>(perm[1])];
    term = term * m[2][static_cast<std::size_t>(perm[2])];
    term = term * m[3][static_cast<std::size_t>(perm[3])];
    sum = sum + (sign > 0 ? term : -term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

/// Exact Gaussian-rational scalar for instantiating the form algebra with
/// exact arithmetic in identity checks.
struct RationalComplex {
  chernform::Rational re{0}, im{0};

  RationalComplex() = default;
  RationalComplex(int v) : re(v) {}  // NOLINT: implicit by design (ring literals)
  RationalComplex(chernform::Rational r, chernform::Rational i) : re(r), im(i) {}

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RationalComplex operator-() const { return {-re, -im}; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

}  // namespace oracles
