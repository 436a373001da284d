#include "chernform/family.hpp"

#include <algorithm>

namespace chernform {

CurveFamily::CurveFamily(FamilyMode mode, std::vector<FiberDescriptor> fibers)
    : mode_(mode), fibers_(std::move(fibers)) {
  if (fibers_.empty()) throw ValidationError("curve family must have at least one fiber");
  std::vector<std::string> seen;
  for (const auto& f : fibers_) {
    if (f.genus < 0) throw ValidationError("fiber '" + f.lambda + "' has negative genus");
    if (f.singularity_count < 0) {
      throw ValidationError("fiber '" + f.lambda + "' has negative singularity count");
    }
    seen.push_back(f.lambda);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw ValidationError("fiber parameters must be distinct");
  }
  if (mode_ == FamilyMode::constant_curve) {
    for (const auto& f : fibers_) {
      if (f.genus != fibers_.front().genus ||
          f.singularity_count != fibers_.front().singularity_count) {
        throw ValidationError(
            "constant-curve family needs identical (genus, singularity count) on every fiber");
      }
    }
  }
}

const BundlePoint& ModuliSection::point_for(const std::string& lambda) const {
  auto it = assignment_.find(lambda);
  if (it == assignment_.end()) throw ValidationError("no assignment for fiber '" + lambda + "'");
  return it->second;
}

ModuliSection build_section(const CurveFamily& family,
                            const std::map<std::string, BundlePoint>& assignments) {
  std::vector<std::string> missing, unstable;
  for (const auto& f : family.fibers()) {
    if (assignments.find(f.lambda) == assignments.end()) missing.push_back(f.lambda);
    if (!f.stable) unstable.push_back(f.lambda);
  }
  std::sort(missing.begin(), missing.end());
  std::sort(unstable.begin(), unstable.end());
  if (!missing.empty()) {
    std::string msg = "section incomplete; unassigned fibers:";
    for (const auto& l : missing) msg += " " + l;
    throw ValidationError(msg);
  }
  if (!unstable.empty()) {
    std::string msg = "stability violation on fibers:";
    for (const auto& l : unstable) msg += " " + l;
    throw ValidationError(msg);
  }
  ModuliSection s;
  s.family_ = &family;
  s.assignment_ = assignments;
  return s;
}

std::vector<BundlePoint> cycle_from_constant_family(const ModuliSection& section) {
  if (section.family().mode() != FamilyMode::constant_curve) {
    throw ValidationError("cycle extraction needs a constant-curve family");
  }
  std::vector<BundlePoint> out;
  out.reserve(section.family().fibers().size());
  for (const auto& f : section.family().fibers()) out.push_back(section.point_for(f.lambda));
  return out;
}

ParabolicValidation validate_parabolic(const ParabolicData& data) {
  ParabolicValidation out;
  if (data.weights.empty()) out.violations.push_back("no weights given");
  if (data.multiplicities.size() != data.weights.size()) {
    out.violations.push_back("multiplicity count does not match weight count");
  }
  for (std::size_t k = 0; k < data.weights.size(); ++k) {
    const Rational& w = data.weights[k];
    if (w < Rational(0) || w >= Rational(1)) {
      out.violations.push_back("weight " + std::to_string(k + 1) + " outside [0, 1)");
    }
    if (k > 0 && !(data.weights[k - 1] < w)) {
      out.violations.push_back("weights not strictly increasing at position " +
                               std::to_string(k + 1));
    }
  }
  for (std::size_t k = 0; k < data.multiplicities.size(); ++k) {
    if (data.multiplicities[k] < 1) {
      out.violations.push_back("multiplicity " + std::to_string(k + 1) + " not positive");
    }
  }
  std::sort(out.violations.begin(), out.violations.end());
  out.valid = out.violations.empty();
  return out;
}

std::vector<std::string> fibers_over_singularity_threshold(const CurveFamily& family,
                                                           int max_singularities) {
  std::vector<std::string> out;
  for (const auto& f : family.fibers()) {
    if (f.singularity_count > max_singularities) out.push_back(f.lambda);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chernform
