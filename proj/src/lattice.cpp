#include "chernform/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace chernform {

namespace {

long long parse_integer(std::string_view text) {
  if (text.empty()) throw ValidationError("empty integer");
  std::size_t pos = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw ValidationError("malformed integer '" + std::string(text) + "'");
  long long v = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') {
      throw ValidationError("malformed integer '" + std::string(text) + "'");
    }
    v = v * 10 + (c - '0');
    if (v < 0) throw ValidationError("integer overflow in '" + std::string(text) + "'");
  }
  return neg ? -v : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  long long num = parse_integer(trim(text.substr(0, slash)));
  long long den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

IntersectionForm::IntersectionForm(Eigen::MatrixXi q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols() || q_.rows() < 1) {
    throw ValidationError("intersection form must be a square matrix");
  }
  if (q_ != q_.transpose().eval()) {
    throw ValidationError("intersection form must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q_.cast<double>());
  double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  double tol = 1e-9 * scale;
  int positive = 0, zero = 0;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    double v = eig.eigenvalues()[k];
    if (v > tol) {
      ++positive;
    } else if (v > -tol) {
      ++zero;
    }
  }
  if (positive != 1) {
    throw ValidationError("intersection form must have exactly one positive eigenvalue");
  }
  if (zero != 0) {
    throw ValidationError("intersection form must be nondegenerate");
  }
}

Rational IntersectionForm::pair(const LatticeClass& a, const LatticeClass& b) const {
  if (a.dimension() != dimension() || b.dimension() != dimension()) {
    throw DimensionError("lattice class dimension does not match the form");
  }
  Rational sum = 0;
  for (int i = 0; i < dimension(); ++i) {
    for (int j = 0; j < dimension(); ++j) {
      if (q_(i, j) != 0) sum += Rational(q_(i, j)) * a[i] * b[j];
    }
  }
  return sum;
}

double norm(const LatticeClass& u, const IntersectionForm& q) {
  return std::sqrt(std::abs(to_double(q.pair(u, u))));
}

double hyperbolic_distance(const LatticeClass& h, const LatticeClass& hprime,
                           const IntersectionForm& q) {
  Rational h2 = q.pair(h, h);
  Rational hp2 = q.pair(hprime, hprime);
  Rational cross = q.pair(h, hprime);
  if (h2 <= Rational(0) || hp2 <= Rational(0) || cross <= Rational(0)) {
    throw ValidationError("hyperbolic distance needs both classes in the positive cone");
  }
  // Exact squared argument keeps beta(H, H) at exactly 0; the clamp only
  // absorbs sub-1e-12 deviations (which cannot occur with exact pairings).
  Rational ratio2 = cross * cross / (h2 * hp2);
  if (ratio2 <= Rational(1)) {
    double r = to_double(ratio2);
    if (r < 1.0 - 1e-12) {
      throw ValidationError("normalized pairing below 1: classes not in one positive cone");
    }
    return 0.0;
  }
  return std::acosh(std::sqrt(to_double(ratio2)));
}

bool in_k_plus(const LatticeClass& d, const IntersectionForm& q,
               const std::vector<LatticeClass>& ample_samples) {
  if (ample_samples.empty()) {
    throw ConfigError("K+ membership needs a nonempty ample sample list");
  }
  for (const auto& h : ample_samples) {
    if (q.pair(h, h) <= Rational(0)) {
      throw ConfigError("ample sample classes must have positive square");
    }
  }
  if (q.pair(d, d) <= Rational(0)) return false;
  for (const auto& h : ample_samples) {
    if (q.pair(d, h) <= Rational(0)) return false;
  }
  return true;
}

LatticeClass xi_invariant(const LatticeClass& c1_gprime, long long rk_gprime,
                          const LatticeClass& c1_g, long long rk_g) {
  if (rk_gprime == 0 || rk_g == 0) throw ValidationError("xi invariant needs nonzero ranks");
  return Rational(1, rk_gprime) * c1_gprime - Rational(1, rk_g) * c1_g;
}

bool discriminant_inequality(const Discriminant& delta, const LatticeClass& h,
                             const IntersectionForm& q, int n) {
  if (std::holds_alternative<Rational>(delta)) {
    return std::get<Rational>(delta) >= Rational(0);
  }
  if (n != 2) {
    throw ConfigError("class-valued delta is only supported on surfaces (n = 2)");
  }
  return q.pair(std::get<LatticeClass>(delta), h) >= Rational(0);
}

Rational surface_discriminant(long long rank, const Rational& c2, const LatticeClass& c1,
                              const IntersectionForm& q) {
  return Rational(2 * rank) * c2 - Rational(rank - 1) * q.pair(c1, c1);
}

BoundResult restriction_bound(const BoundQuery& query) {
  if (query.rank < 2) throw ValidationError("restriction bound needs rank >= 2");
  if (query.big_r <= Rational(0)) throw ValidationError("restriction bound needs R > 0");
  if (query.delta < Rational(0)) throw ValidationError("restriction bound needs delta >= 0");
  if (query.n < 1) throw ValidationError("restriction bound needs n >= 1");

  Rational rhs = query.big_r / Rational(query.rank) * query.delta + Rational(1);  // 2n must reach this
  BoundResult out;
  out.satisfied = Rational(2 * query.n) >= rhs;
  Rational half = rhs / 2;
  out.minimal_n = std::max<long long>(1, ceil_div(half.numerator(), half.denominator()));
  return out;
}

}  // namespace chernform
