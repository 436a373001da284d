#include "chernform/family.hpp"
#include "doctest.h"

using namespace chernform;

namespace {

FiberDescriptor fiber(const std::string& lambda, int genus = 2, int sing = 0, bool stable = true,
                      const std::string& key = "rep", const std::string& value = "0.25") {
  FiberDescriptor f;
  f.lambda = lambda;
  f.genus = genus;
  f.singularity_count = sing;
  f.stable = stable;
  f.point.payload[key] = value;
  return f;
}

std::map<std::string, BundlePoint> assignments_of(const CurveFamily& family) {
  std::map<std::string, BundlePoint> out;
  for (const auto& f : family.fibers()) out[f.lambda] = f.point;
  return out;
}

}  // namespace

TEST_SUITE("family") {
  TEST_CASE("section construction") {
    CurveFamily one(FamilyMode::constant_curve, {fiber("a")});
    ModuliSection s = build_section(one, assignments_of(one));
    CHECK(s.point_for("a").payload.at("rep") == "0.25");

    CurveFamily two(FamilyMode::product, {fiber("a"), fiber("b")});
    std::map<std::string, BundlePoint> partial = {{"a", fiber("a").point}};
    CHECK_THROWS_WITH_AS(build_section(two, partial),
                         "section incomplete; unassigned fibers: b", ValidationError);
  }

  TEST_CASE("unstable fibers are reported sorted regardless of order") {
    std::vector<FiberDescriptor> fibers = {fiber("c", 2, 0, false), fiber("a", 2, 0, false),
                                           fiber("b")};
    CurveFamily f1(FamilyMode::product, fibers);
    std::swap(fibers[0], fibers[1]);
    CurveFamily f2(FamilyMode::product, fibers);
    std::string msg1, msg2;
    try {
      build_section(f1, assignments_of(f1));
    } catch (const ValidationError& e) {
      msg1 = e.what();
    }
    try {
      build_section(f2, assignments_of(f2));
    } catch (const ValidationError& e) {
      msg2 = e.what();
    }
    CHECK(msg1 == "stability violation on fibers: a c");
    CHECK(msg1 == msg2);
  }

  TEST_CASE("cycle extraction from a constant family") {
    CurveFamily single(FamilyMode::constant_curve, {fiber("a")});
    CHECK(cycle_from_constant_family(build_section(single, assignments_of(single))).size() == 1);

    // all fibers share one point: multiset with multiplicity = fiber count
    std::vector<FiberDescriptor> same = {fiber("a"), fiber("b"), fiber("c"), fiber("d"),
                                         fiber("e")};
    CurveFamily five(FamilyMode::constant_curve, same);
    auto cycle = cycle_from_constant_family(build_section(five, assignments_of(five)));
    CHECK(cycle.size() == 5);
    for (const auto& p : cycle) CHECK(p == same.front().point);

    // distinct points keep fiber order
    std::vector<FiberDescriptor> distinct = {fiber("a", 2, 0, true, "rep", "1"),
                                             fiber("b", 2, 0, true, "rep", "2"),
                                             fiber("c", 2, 0, true, "rep", "3")};
    CurveFamily three(FamilyMode::constant_curve, distinct);
    auto pts = cycle_from_constant_family(build_section(three, assignments_of(three)));
    CHECK(pts[0].payload.at("rep") == "1");
    CHECK(pts[1].payload.at("rep") == "2");
    CHECK(pts[2].payload.at("rep") == "3");

    CurveFamily prod(FamilyMode::product, {fiber("a")});
    CHECK_THROWS_AS(cycle_from_constant_family(build_section(prod, assignments_of(prod))),
                    ValidationError);
  }

  TEST_CASE("family invariants") {
    CHECK_THROWS_AS(CurveFamily(FamilyMode::product, {}), ValidationError);
    CHECK_THROWS_AS(CurveFamily(FamilyMode::product, {fiber("a"), fiber("a")}), ValidationError);
    CHECK_THROWS_AS(CurveFamily(FamilyMode::constant_curve, {fiber("a", 2), fiber("b", 3)}),
                    ValidationError);
    CHECK_THROWS_AS(CurveFamily(FamilyMode::product, {fiber("a", -1)}), ValidationError);
    // product families may mix genera
    CHECK_NOTHROW(CurveFamily(FamilyMode::product, {fiber("a", 2), fiber("b", 3)}));
  }

  TEST_CASE("parabolic weight validation") {
    ParabolicData ok{{Rational(0), Rational(1, 2)}, {1, 1}};
    CHECK(validate_parabolic(ok).valid);

    ParabolicData strict{{Rational(1, 2), Rational(1, 2)}, {1, 1}};
    CHECK(!validate_parabolic(strict).valid);

    ParabolicData mixed{{Rational(1, 5), Rational(9, 10)}, {1, 1}};
    CHECK(validate_parabolic(mixed).valid);

    ParabolicData range{{Rational(-1, 2), Rational(1)}, {1, 1}};
    ParabolicValidation rv = validate_parabolic(range);
    CHECK(!rv.valid);
    CHECK(rv.violations.size() == 2);

    ParabolicData mult{{Rational(0)}, {0}};
    CHECK(!validate_parabolic(mult).valid);
  }

  TEST_CASE("singularity threshold listing") {
    CurveFamily f(FamilyMode::product,
                  {fiber("c", 2, 5), fiber("a", 2, 1), fiber("b", 2, 3)});
    auto over = fibers_over_singularity_threshold(f, 2);
    CHECK(over == std::vector<std::string>{"b", "c"});
    CHECK(fibers_over_singularity_threshold(f, 5).empty());
  }
}
