#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <string_view>
#include <variant>
#include <vector>

#include "chernform/errors.hpp"

namespace chernform {

using Rational = boost::rational<long long>;

/// Parses "p" or "p/q" with optional sign.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Element of the numerical lattice with integer or rational coordinates.
class LatticeClass {
 public:
  LatticeClass() = default;
  explicit LatticeClass(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  static LatticeClass integers(const std::vector<long long>& v) {
    std::vector<Rational> c(v.begin(), v.end());
    return LatticeClass(std::move(c));
  }

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](int k) const { return coords_[static_cast<std::size_t>(k)]; }
  const std::vector<Rational>& coordinates() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (c != Rational(0)) return false;
    }
    return true;
  }

  LatticeClass operator-() const {
    std::vector<Rational> c;
    c.reserve(coords_.size());
    for (const auto& x : coords_) c.push_back(-x);
    return LatticeClass(std::move(c));
  }

  friend LatticeClass operator+(const LatticeClass& a, const LatticeClass& b) {
    a.check_dim(b);
    std::vector<Rational> c;
    c.reserve(a.coords_.size());
    for (std::size_t k = 0; k < a.coords_.size(); ++k) c.push_back(a.coords_[k] + b.coords_[k]);
    return LatticeClass(std::move(c));
  }
  friend LatticeClass operator-(const LatticeClass& a, const LatticeClass& b) { return a + (-b); }
  friend LatticeClass operator*(const Rational& s, const LatticeClass& a) {
    std::vector<Rational> c;
    c.reserve(a.coords_.size());
    for (const auto& x : a.coords_) c.push_back(s * x);
    return LatticeClass(std::move(c));
  }

  bool operator==(const LatticeClass& other) const { return coords_ == other.coords_; }

 private:
  void check_dim(const LatticeClass& other) const {
    if (coords_.size() != other.coords_.size()) throw DimensionError("lattice class dimension mismatch");
  }
  std::vector<Rational> coords_;
};

/// Symmetric integer intersection pairing with Minkowski signature: exactly
/// one positive eigenvalue (Hodge index) and no zero eigenvalue, verified at
/// construction.
class IntersectionForm {
 public:
  explicit IntersectionForm(Eigen::MatrixXi q);

  int dimension() const { return static_cast<int>(q_.rows()); }
  const Eigen::MatrixXi& matrix() const { return q_; }

  Rational pair(const LatticeClass& a, const LatticeClass& b) const;

 private:
  Eigen::MatrixXi q_;
};

/// |u| = |u^2|^{1/2}.
double norm(const LatticeClass& u, const IntersectionForm& q);

/// beta(H, H') = arccosh(H.H' / (|H| |H'|)). Requires both classes in the
/// positive cone with positive pairing; the arccosh argument is clamped to
/// [1, inf) tolerating a 1e-12 deviation.
double hyperbolic_distance(const LatticeClass& h, const LatticeClass& hprime,
                           const IntersectionForm& q);

/// D in K+: D^2 > 0 and D.H > 0 for every supplied ample sample.
bool in_k_plus(const LatticeClass& d, const IntersectionForm& q,
               const std::vector<LatticeClass>& ample_samples);

/// xi = c1(G') / rk(G') - c1(G) / rk(G).
LatticeClass xi_invariant(const LatticeClass& c1_gprime, long long rk_gprime,
                          const LatticeClass& c1_g, long long rk_g);

/// delta(F).H^{n-1} >= 0. Scalar deltas reduce to delta >= 0 for any n;
/// class-valued deltas pair against H and require n = 2.
using Discriminant = std::variant<Rational, LatticeClass>;
bool discriminant_inequality(const Discriminant& delta, const LatticeClass& h,
                             const IntersectionForm& q, int n);

/// Standard surface discriminant 2 r c2 - (r - 1) c1^2, offered as a labeled
/// helper only; never substituted for a user-supplied delta.
Rational surface_discriminant(long long rank, const Rational& c2, const LatticeClass& c1,
                              const IntersectionForm& q);

/// Effective-restriction hypothesis 2n >= (R/r) delta + 1. R is a required
/// user input.
struct BoundQuery {
  long long rank = 2;   // >= 2
  Rational big_r = 1;   // > 0
  Rational delta = 0;   // >= 0
  long long n = 1;      // >= 1
};

struct BoundResult {
  bool satisfied = false;
  long long minimal_n = 1;  // smallest n satisfying the hypothesis
};

BoundResult restriction_bound(const BoundQuery& query);

}  // namespace chernform
