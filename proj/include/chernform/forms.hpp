#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "chernform/errors.hpp"

namespace chernform {

// Exterior algebra over the coordinate coframe {dz1, dzbar1, dz2, dzbar2} of a
// 2-complex-dimensional patch. The basis order is fixed globally; every sign in
// the toolkit is a permutation parity relative to it.

enum class Basis : std::uint8_t { dz1 = 0, dzbar1 = 1, dz2 = 2, dzbar2 = 3 };

inline constexpr int kBasisCount = 4;

/// A strictly increasing tuple of basis covectors, encoded as a 4-bit mask
/// (bit k set = covector k is a factor). The encoding makes the canonical
/// ordering and the no-repetition invariant structural.
using IndexTuple = std::uint8_t;

inline constexpr IndexTuple kTopTuple = 0b1111;  // dz1^dzbar1^dz2^dzbar2

inline IndexTuple tuple_of(Basis b) {
  return static_cast<IndexTuple>(1u << static_cast<unsigned>(b));
}

inline int tuple_degree(IndexTuple t) { return std::popcount(t); }

/// Parity sign of concatenating the sorted factors of `a` with those of `b`
/// and resorting: (-1)^{#inversions}. Zero overlap is the caller's job.
inline int merge_sign(IndexTuple a, IndexTuple b) {
  int inversions = 0;
  for (int j = 0; j < kBasisCount; ++j) {
    if (b & (1u << j)) {
      inversions += std::popcount(static_cast<unsigned>(a) >> (j + 1));
    }
  }
  return (inversions & 1) ? -1 : 1;
}

/// Homogeneous exterior-algebra element of one degree 0..4. The zero form of
/// any degree is the empty coefficient map, which also absorbs wedge products
/// of degree > 4.
template <typename Scalar>
class BasicForm {
 public:
  BasicForm() : degree_(0) {}

  explicit BasicForm(int degree) : degree_(degree) {
    if (degree < 0 || degree > kBasisCount) {
      throw DimensionError("form degree must be in 0..4");
    }
  }

  static BasicForm scalar(Scalar value) {
    BasicForm f(0);
    f.set_coefficient(0, value);
    return f;
  }

  static BasicForm basis(Basis b) {
    BasicForm f(1);
    f.set_coefficient(tuple_of(b), Scalar(1));
    return f;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }

  const std::map<IndexTuple, Scalar>& coefficients() const { return coeffs_; }

  Scalar coefficient(IndexTuple t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }

  void set_coefficient(IndexTuple t, Scalar value) {
    if (tuple_degree(t) != degree_) {
      throw DimensionError("index tuple degree does not match form degree");
    }
    if (value == Scalar(0)) {
      coeffs_.erase(t);
    } else {
      coeffs_[t] = value;
    }
  }

  void add_coefficient(IndexTuple t, Scalar value) {
    set_coefficient(t, coefficient(t) + value);
  }

  BasicForm& operator+=(const BasicForm& other) {
    if (!other.is_zero() && !is_zero() && degree_ != other.degree_) {
      throw DimensionError("cannot add forms of different degrees");
    }
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [t, c] : other.coeffs_) add_coefficient(t, c);
    return *this;
  }

  BasicForm& operator-=(const BasicForm& other) { return *this += other * Scalar(-1); }

  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }

  friend BasicForm operator*(const BasicForm& f, Scalar s) {
    BasicForm out(f.degree_);
    if (s == Scalar(0)) return out;
    for (const auto& [t, c] : f.coeffs_) out.set_coefficient(t, c * s);
    return out;
  }
  friend BasicForm operator*(Scalar s, const BasicForm& f) { return f * s; }

  bool operator==(const BasicForm& other) const {
    return degree_ == other.degree_ && coeffs_ == other.coeffs_;
  }

 private:
  int degree_;
  std::map<IndexTuple, Scalar> coeffs_;
};

/// Wedge product. Result degree is deg a + deg b, clamped to 4; a clamped
/// product is the zero form (every factor pair shares an index by then).
template <typename Scalar>
BasicForm<Scalar> wedge(const BasicForm<Scalar>& a, const BasicForm<Scalar>& b) {
  int deg = a.degree() + b.degree();
  if (deg > kBasisCount) return BasicForm<Scalar>(kBasisCount);
  BasicForm<Scalar> out(deg);
  for (const auto& [ta, ca] : a.coefficients()) {
    for (const auto& [tb, cb] : b.coefficients()) {
      if (ta & tb) continue;  // repeated covector
      Scalar term = ca * cb;
      if (merge_sign(ta, tb) < 0) term = -term;
      out.add_coefficient(static_cast<IndexTuple>(ta | tb), term);
    }
  }
  return out;
}

/// Coefficient of dz1^dzbar1^dz2^dzbar2; zero for any form of degree != 4.
template <typename Scalar>
Scalar top_coefficient(const BasicForm<Scalar>& f) {
  if (f.degree() != kBasisCount) return Scalar(0);
  return f.coefficient(kTopTuple);
}

/// Square matrix of forms sharing one degree (curvature matrices and their
/// wedge powers).
template <typename Scalar>
class BasicMatrixForm {
 public:
  BasicMatrixForm(int rank, int degree)
      : rank_(rank), degree_(degree), entries_(static_cast<std::size_t>(rank) * rank, BasicForm<Scalar>(degree)) {
    if (rank < 1) throw DimensionError("matrix form rank must be >= 1");
    if (degree < 0 || degree > kBasisCount) throw DimensionError("form degree must be in 0..4");
  }

  int rank() const { return rank_; }
  int degree() const { return degree_; }

  const BasicForm<Scalar>& entry(int i, int j) const { return entries_[index(i, j)]; }

  void set_entry(int i, int j, BasicForm<Scalar> f) {
    if (!f.is_zero() && f.degree() != degree_) {
      throw DimensionError("matrix form entries must share one degree");
    }
    if (f.is_zero()) f = BasicForm<Scalar>(degree_);
    entries_[index(i, j)] = std::move(f);
  }

  BasicMatrixForm& operator+=(const BasicMatrixForm& other) {
    check_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }

  friend BasicMatrixForm operator*(const BasicMatrixForm& m, Scalar s) {
    BasicMatrixForm out(m.rank_, m.degree_);
    for (std::size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = m.entries_[k] * s;
    return out;
  }
  friend BasicMatrixForm operator*(Scalar s, const BasicMatrixForm& m) { return m * s; }

 private:
  void check_same_shape(const BasicMatrixForm& other) const {
    if (rank_ != other.rank_ || degree_ != other.degree_) {
      throw DimensionError("matrix form shape mismatch");
    }
  }
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= rank_ || j < 0 || j >= rank_) throw DimensionError("matrix form index out of range");
    return static_cast<std::size_t>(i) * rank_ + j;
  }

  int rank_;
  int degree_;
  std::vector<BasicForm<Scalar>> entries_;
};

/// Entrywise (A^B)_{ij} = sum_k A_{ik} ^ B_{kj}.
template <typename Scalar>
BasicMatrixForm<Scalar> mat_wedge(const BasicMatrixForm<Scalar>& a, const BasicMatrixForm<Scalar>& b) {
  if (a.rank() != b.rank()) throw DimensionError("mat_wedge rank mismatch");
  int deg = a.degree() + b.degree();
  BasicMatrixForm<Scalar> out(a.rank(), deg > kBasisCount ? kBasisCount : deg);
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = 0; j < a.rank(); ++j) {
      BasicForm<Scalar> acc = wedge(a.entry(i, 0), b.entry(0, j));
      for (int k = 1; k < a.rank(); ++k) acc += wedge(a.entry(i, k), b.entry(k, j));
      out.set_entry(i, j, std::move(acc));
    }
  }
  return out;
}

template <typename Scalar>
BasicForm<Scalar> trace(const BasicMatrixForm<Scalar>& a) {
  BasicForm<Scalar> acc(a.degree());
  for (int i = 0; i < a.rank(); ++i) acc += a.entry(i, i);
  return acc;
}

using Complex = std::complex<double>;
using ComplexForm = BasicForm<Complex>;
using MatrixForm = BasicMatrixForm<Complex>;

}  // namespace chernform
