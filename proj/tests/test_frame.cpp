#include <catch2/catch_amalgamated.hpp>

#include "norden/specfile.hpp"
#include "support/example_tables.hpp"
#include "support/generators.hpp"

using namespace norden;

namespace {

const CheckResult* find_check(const ValidationReport& report, const std::string& name) {
  for (const CheckResult& c : report.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("the builtin example validates, with an abelian complex structure") {
  const FrameSpec spec = builtin_example();
  const ValidationReport report = validate_spec(spec);
  CHECK(report.all_passed());
  REQUIRE(report.notes.size() == 1);
  CHECK(report.notes[0].name == "abelian-complex-structure");
  CHECK(report.notes[0].passed);
}

TEST_CASE("J = identity fails the square condition at (1,1)") {
  FrameSpec spec = builtin_example();
  Tensor J(4, {Slot::Down, Slot::Up}, spec.params);
  for (int i = 0; i < 4; ++i) J.set({i, i}, Polynomial::constant(Rational(1), spec.params));
  spec.J = J;
  const ValidationReport report = validate_spec(spec);
  const CheckResult* square = find_check(report, "complex-structure-square");
  REQUIRE(square != nullptr);
  CHECK_FALSE(square->passed);
  CHECK(square->where == std::vector<int>{1, 1});
}

TEST_CASE("a positive metric fails the compatibility condition") {
  FrameSpec spec = builtin_example();
  Tensor g(4, {Slot::Down, Slot::Down}, spec.params);
  for (int i = 0; i < 4; ++i) g.set({i, i}, Polynomial::constant(Rational(1), spec.params));
  spec.g = g;
  const ValidationReport report = validate_spec(spec);
  const CheckResult* norden_check = find_check(report, "norden-compatibility");
  REQUIRE(norden_check != nullptr);
  CHECK_FALSE(norden_check->passed);
}

TEST_CASE("a broken Jacobi identity is caught with the violating triple") {
  FrameSpec spec = builtin_example();
  // [X1,X2] = X1 alongside the existing brackets breaks the identity.
  spec.c.set({0, 1, 0}, Polynomial::constant(Rational(1), spec.params));
  spec.c.set({1, 0, 0}, Polynomial::constant(Rational(-1), spec.params));
  const ValidationReport report = validate_spec(spec);
  const CheckResult* jacobi = find_check(report, "jacobi-identity");
  REQUIRE(jacobi != nullptr);
  CHECK_FALSE(jacobi->passed);
  CHECK(jacobi->where.size() == 3);
  CHECK_THROWS_AS(require_valid(spec), ValidationError);
}

TEST_CASE("antisymmetry violations are located") {
  FrameSpec spec = builtin_example();
  spec.c.set({0, 1, 2}, Polynomial::constant(Rational(1), spec.params));
  const ValidationReport report = validate_spec(spec);
  const CheckResult* anti = find_check(report, "bracket-antisymmetry");
  REQUIRE(anti != nullptr);
  CHECK_FALSE(anti->passed);
}

TEST_CASE("the twin metric of the example has the documented components") {
  const FrameSpec spec = builtin_example();
  const Tensor gt = twin_metric(spec);
  const Tensor expected =
      testsupport::symmetric_from_entries(4, spec.params, testsupport::twin_metric_entries());
  CHECK(gt == expected);
}

TEST_CASE("the twin of the twin metric is the negated metric") {
  const FrameSpec spec = builtin_example();
  const Tensor gt = twin_metric(spec);
  CHECK(twin_of_metric(spec.J, gt) == -spec.g);
}

TEST_CASE("twin metrics of valid specs are symmetric") {
  testsupport::Rng rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const FrameSpec spec = testsupport::random_valid_spec(rng);
    const Tensor gt = twin_metric(spec);
    CHECK(gt == permute(gt, {1, 0}));
    // and itself a compatible metric: gt(Jx,Jy) = -gt(x,y)
    CHECK(compose_with(compose_with(gt, 0, spec.J), 1, spec.J) == -gt);
  }
}

TEST_CASE("substitution produces a parameter-free spec") {
  const FrameSpec spec = builtin_example();
  const FrameSpec at_zero = substitute_spec(
      spec, {{"l1", Rational(0)}, {"l2", Rational(0)}, {"l3", Rational(0)}, {"l4", Rational(0)}});
  CHECK(at_zero.params.empty());
  CHECK(at_zero.c.is_zero());
  CHECK(validate_spec(at_zero).all_passed());
  CHECK_THROWS_AS(substitute_spec(spec, {{"nope", Rational(1)}}), StructuralError);
}
