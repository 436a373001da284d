#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "chernform/detformula.hpp"
#include "chernform/family.hpp"

namespace chernform {

struct MetricSpec {
  int rank = 1;
  MetricMode mode = MetricMode::product;
  std::vector<std::string> entry_text;  // row-major, for reports
  std::vector<Expression> entries;      // row-major

  HermitianMetricField field() const { return HermitianMetricField(rank, entries, mode); }
};

struct GridConfig {
  GridSpec resolution;               // single-grid commands
  std::vector<int> resolutions{4, 8, 16};  // verify ladder
  double fd_step = 1e-3;
  double tolerance = 1e-6;
};

struct RunSpec {
  std::vector<std::string> commands;
  std::string convention = "both";  // paper | chernweil | both
};

struct LatticeSpec {
  std::optional<IntersectionForm> form;
  std::vector<LatticeClass> ample;
  std::optional<LatticeClass> h, hprime, d;
  std::optional<Rational> delta;
  std::optional<LatticeClass> delta_class;
  std::optional<long long> rank, n;
  std::optional<Rational> big_r;
  std::optional<LatticeClass> xi_c1a, xi_c1b;
  std::optional<long long> xi_rka, xi_rkb;
};

struct FamilySpec {
  FamilyMode mode = FamilyMode::constant_curve;
  std::optional<int> max_singularities;
  std::vector<FiberDescriptor> fibers;
  std::optional<ParabolicData> parabolic;

  CurveFamily family() const { return CurveFamily(mode, fibers); }
};

/// One sectioned key/value scenario file ([metric], [patch], [grid], [run],
/// [lattice], [family]); expressions are quoted strings. See the README for
/// the full schema.
struct Scenario {
  std::string name;
  std::optional<MetricSpec> metric;
  std::optional<Patch> patch;
  GridConfig grid;
  RunSpec run;
  std::optional<LatticeSpec> lattice;
  std::optional<FamilySpec> family;
};

Scenario parse_scenario(std::string_view text, const std::string& name);
Scenario load_scenario(const std::filesystem::path& path);

/// Conventions requested by a CLI flag or run spec value; throws on unknown
/// names.
std::vector<Convention> conventions_from_string(std::string_view value);

}  // namespace chernform
