#pragma once

#include <map>
#include <string>
#include <vector>

#include "chernform/lattice.hpp"

namespace chernform {

/// Opaque descriptor of a point in a moduli space (free-form payload, e.g.
/// representation parameters). The toolkit never interprets it.
struct BundlePoint {
  std::map<std::string, std::string> payload;

  bool operator==(const BundlePoint& other) const { return payload == other.payload; }
};

struct FiberDescriptor {
  std::string lambda;  // parameter identifier
  int genus = 0;
  int singularity_count = 0;
  BundlePoint point;
  bool stable = false;
};

enum class FamilyMode { constant_curve, product, fibration };

inline const char* family_mode_name(FamilyMode m) {
  switch (m) {
    case FamilyMode::constant_curve: return "constant-curve";
    case FamilyMode::product: return "product";
    default: return "fibration";
  }
}

/// Ordered, nonempty list of fiber descriptors. Constant-curve families must
/// share (genus, singularity count) across fibers.
class CurveFamily {
 public:
  CurveFamily(FamilyMode mode, std::vector<FiberDescriptor> fibers);

  FamilyMode mode() const { return mode_; }
  const std::vector<FiberDescriptor>& fibers() const { return fibers_; }

 private:
  FamilyMode mode_;
  std::vector<FiberDescriptor> fibers_;
};

/// Total assignment of one stable moduli point per fiber.
class ModuliSection {
 public:
  const CurveFamily& family() const { return *family_; }
  const BundlePoint& point_for(const std::string& lambda) const;

 private:
  friend ModuliSection build_section(const CurveFamily&,
                                     const std::map<std::string, BundlePoint>&);
  const CurveFamily* family_ = nullptr;
  std::map<std::string, BundlePoint> assignment_;
};

/// Validates coverage (every fiber assigned) and stability of every assigned
/// fiber; violations name the offending lambdas in sorted order.
ModuliSection build_section(const CurveFamily& family,
                            const std::map<std::string, BundlePoint>& assignments);

/// The assigned points of a constant-curve family, in fiber order (a multiset
/// in one moduli space).
std::vector<BundlePoint> cycle_from_constant_family(const ModuliSection& section);

/// Parabolic weights 0 <= a_1 < ... < a_r < 1 with positive multiplicities.
struct ParabolicData {
  std::vector<Rational> weights;
  std::vector<long long> multiplicities;
};

struct ParabolicValidation {
  bool valid = true;
  std::vector<std::string> violations;  // sorted
};

ParabolicValidation validate_parabolic(const ParabolicData& data);

/// Fibers whose singularity count exceeds the configured threshold, sorted by
/// lambda ("relatively small number of singularities" is a user-set knob).
std::vector<std::string> fibers_over_singularity_threshold(const CurveFamily& family,
                                                           int max_singularities);

}  // namespace chernform
