#include <catch2/catch_amalgamated.hpp>

#include "norden/objects.hpp"
#include "norden/specfile.hpp"
#include "support/example_tables.hpp"
#include "support/generators.hpp"

using namespace norden;

namespace {

struct ExampleSetup {
  FrameSpec spec = builtin_example();
  MetricPair g = MetricPair::make(spec.g);
  MetricPair gt = MetricPair::make(twin_metric(spec));
  Connection nabla = levi_civita(spec, g);
  Connection nabla_twin = levi_civita(spec, gt);
};

Polynomial lam(const FrameSpec& spec, const std::string& text) {
  return parse_polynomial(text, spec.params);
}

Tensor form_from(const FrameSpec& spec, const std::vector<std::string>& values) {
  Tensor f(4, {Slot::Down}, spec.params);
  for (int k = 0; k < 4; ++k) f.set({k}, lam(spec, values[static_cast<std::size_t>(k)]));
  return f;
}

FrameSpec abelian_instance() {
  const FrameSpec spec = builtin_example();
  return substitute_spec(spec, {{"l1", Rational(0)},
                                {"l2", Rational(0)},
                                {"l3", Rational(0)},
                                {"l4", Rational(0)}});
}

// [X1,X2] = X3 with the standard J and metric: a generic-class structure.
FrameSpec heisenberg_instance() {
  FrameSpec base = abelian_instance();
  base.c.set({0, 1, 2}, Polynomial::constant(Rational(1)));
  base.c.set({1, 0, 2}, Polynomial::constant(Rational(-1)));
  return base;
}

}  // namespace

TEST_CASE("the fundamental tensor reproduces the 40-component tables") {
  const ExampleSetup ex;
  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  const Tensor expected =
      testsupport::tensor_from_entries(4, {Slot::Down, Slot::Down, Slot::Down},
                                       ex.spec.params, testsupport::F_entries(),
                                       testsupport::Completion::None);
  CHECK(F == expected);

  const Tensor Ft = fundamental_F(ex.nabla_twin, ex.spec, ex.gt);
  const Tensor expected_twin =
      testsupport::tensor_from_entries(4, {Slot::Down, Slot::Down, Slot::Down},
                                       ex.spec.params, testsupport::F_twin_entries(),
                                       testsupport::Completion::None);
  CHECK(Ft == expected_twin);
}

TEST_CASE("a flat structure has vanishing fundamental tensor") {
  const FrameSpec flat = abelian_instance();
  const MetricPair m = MetricPair::make(flat.g);
  CHECK(fundamental_F(levi_civita(flat, m), flat, m).is_zero());
}

TEST_CASE("mismatched connection and metric are rejected") {
  const ExampleSetup ex;
  // the twin connection is not metric for g, so the defining symmetries fail
  CHECK_THROWS_AS(fundamental_F(ex.nabla_twin, ex.spec, ex.g), ConsistencyError);
}

TEST_CASE("Lee forms match the example and satisfy theta* = -theta o J") {
  const ExampleSetup ex;
  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  auto [theta, theta_star] = lee_forms(F, ex.g, ex.spec);
  CHECK(theta == form_from(ex.spec, testsupport::theta_values()));
  CHECK(theta_star == form_from(ex.spec, testsupport::theta_star_values()));
  CHECK(theta_star == -compose_with(theta, 0, ex.spec.J));

  Tensor zero_F(4, {Slot::Down, Slot::Down, Slot::Down}, ex.spec.params);
  auto [z1, z2] = lee_forms(zero_F, ex.g, ex.spec);
  CHECK(z1.is_zero());
  CHECK(z2.is_zero());
}

TEST_CASE("the potential matches the example tables and its identity") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  CHECK(phi03.at({0, 0, 0}) == lam(ex.spec, "-l4"));
  const Tensor expected = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Down}, ex.spec.params, testsupport::phi_entries(),
      testsupport::Completion::SymmetricPair01);
  CHECK(phi03 == expected);

  // Phi(x,y,z) - Phi(Jx,Jy,z) - Phi(Jx,y,Jz) - Phi(x,Jy,Jz) = 0
  const Tensor a = compose_with(compose_with(phi03, 0, ex.spec.J), 1, ex.spec.J);
  const Tensor b = compose_with(compose_with(phi03, 0, ex.spec.J), 2, ex.spec.J);
  const Tensor c = compose_with(compose_with(phi03, 1, ex.spec.J), 2, ex.spec.J);
  CHECK((phi03 - a - b - c).is_zero());
  (void)phi12;
}

TEST_CASE("an input connection with torsion is rejected") {
  const ExampleSetup ex;
  Connection bent = ex.nabla;
  // perturb an off-diagonal coefficient so the difference loses symmetry
  bent.set(0, 1, 0, bent.at(0, 1, 0) + lam(ex.spec, "l1"));
  CHECK_THROWS_AS(potential_phi(bent, ex.nabla_twin, ex.g), ConnectionError);
}

TEST_CASE("the two constructions of the potential agree") {
  const ExampleSetup ex;
  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi12;
  CHECK(phi_from_F(F, ex.spec) == phi03);
  // and the inverse relation recovers F
  CHECK(f_from_phi(phi03, ex.spec) == F);

  Tensor zero_F(4, {Slot::Down, Slot::Down, Slot::Down}, ex.spec.params);
  CHECK(phi_from_F(zero_F, ex.spec).is_zero());

  // cross-check at randomized parameter values
  testsupport::Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const FrameSpec inst = testsupport::random_example_instance(rng);
    const MetricPair m = MetricPair::make(inst.g);
    const MetricPair mt = MetricPair::make(twin_metric(inst));
    const Connection n1 = levi_civita(inst, m);
    const Connection n2 = levi_civita(inst, mt);
    auto [p12, p03] = potential_phi(n1, n2, m);
    (void)p12;
    CHECK(phi_from_F(fundamental_F(n1, inst, m), inst) == p03);
  }
}

TEST_CASE("trace forms of the potential match the Lee forms") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi12;
  auto [f, f_star] = f_forms(phi03, ex.g, ex.spec);
  CHECK(f == form_from(ex.spec, testsupport::f_values()));
  CHECK(f.at({0}) == lam(ex.spec, "-4*l4"));
  CHECK(f_star == form_from(ex.spec, testsupport::f_star_values()));

  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  auto [theta, theta_star] = lee_forms(F, ex.g, ex.spec);
  CHECK(f == theta_star);
  CHECK(f_star == -theta);

  Tensor zero(4, {Slot::Down, Slot::Down, Slot::Down}, ex.spec.params);
  auto [zf, zfs] = f_forms(zero, ex.g, ex.spec);
  CHECK(zf.is_zero());
  CHECK(zfs.is_zero());
}

TEST_CASE("the Nijenhuis tensor vanishes on the example") {
  const ExampleSetup ex;
  CHECK(nijenhuis(ex.spec).is_zero());
  CHECK(nijenhuis(abelian_instance()).is_zero());
}

TEST_CASE("Nijenhuis identities hold on random specs") {
  testsupport::Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const FrameSpec spec = testsupport::random_valid_spec(rng);
    const MetricPair m = MetricPair::make(spec.g);
    const Tensor n03 = lower_index(nijenhuis(spec), 2, m);
    // N(x,y,z) = N(x,Jy,Jz), equivalently N(x,Jy,z) = -N(x,y,Jz)
    CHECK(n03 == compose_with(compose_with(n03, 1, spec.J), 2, spec.J));
    CHECK(compose_with(n03, 1, spec.J) == -compose_with(n03, 2, spec.J));
    // relation with the potential: N(x,y,z) = 2 Phi(z,Jx,Jy) - 2 Phi(z,x,y)
    const Connection n1 = levi_civita(spec, m);
    const Connection n2 = levi_civita(spec, MetricPair::make(twin_metric(spec)));
    auto [p12, p03] = potential_phi(n1, n2, m);
    (void)p12;
    const Tensor phi_zxy = permute(p03, {2, 0, 1});  // Phi(z,x,y)
    const Tensor rhs =
        Rational(2) * compose_with(compose_with(phi_zxy, 0, spec.J), 1, spec.J) -
        Rational(2) * phi_zxy;
    CHECK(n03 == rhs);
  }
}

TEST_CASE("the associated Nijenhuis tensor is four times the potential here") {
  const ExampleSetup ex;
  const Tensor s03 = lower_index(associated_nijenhuis(ex.nabla, ex.spec), 2, ex.g);
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi12;
  CHECK(s03 == Rational(4) * phi03);
  CHECK(associated_nijenhuis(levi_civita(abelian_instance(),
                                         MetricPair::make(abelian_instance().g)),
                             abelian_instance())
            .is_zero());
}

TEST_CASE("the associated Nijenhuis relation holds on random specs") {
  testsupport::Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const FrameSpec spec = testsupport::random_valid_spec(rng);
    const MetricPair m = MetricPair::make(spec.g);
    const Connection n1 = levi_civita(spec, m);
    const Connection n2 = levi_civita(spec, MetricPair::make(twin_metric(spec)));
    const Tensor s03 = lower_index(associated_nijenhuis(n1, spec), 2, m);
    auto [p12, p03] = potential_phi(n1, n2, m);
    (void)p12;
    // S(x,y,z) = 2 Phi(x,y,z) - 2 Phi(Jx,Jy,z)
    const Tensor rhs = Rational(2) * p03 -
                       Rational(2) * compose_with(compose_with(p03, 0, spec.J), 1, spec.J);
    CHECK(s03 == rhs);
  }
}

TEST_CASE("square norms of the example, both metrics") {
  const ExampleSetup ex;
  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  CHECK(square_norm_nablaJ(F, ex.g) == lam(ex.spec, testsupport::norm_nablaJ_value()));

  const Tensor Ft = fundamental_F(ex.nabla_twin, ex.spec, ex.gt);
  const Polynomial norm_twin = square_norm_nablaJ(Ft, ex.gt);
  // proportional to l1*l3 + l2*l4; the computed constant is -32
  CHECK(norm_twin == lam(ex.spec, "-32*l1*l3 + -32*l2*l4"));
  CHECK(norm_twin.primitive_normalized() == lam(ex.spec, "l1*l3 + l2*l4"));

  Tensor zero(4, {Slot::Down, Slot::Down, Slot::Down}, ex.spec.params);
  CHECK(square_norm_nablaJ(zero, ex.g).is_zero());
}

TEST_CASE("Q closes the gap between the two curvatures") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi03;
  const Tensor Q = q_tensor(ex.nabla, phi12);

  // oracle: raise the frozen curvature tables and subtract
  const Tensor R04 = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Down, Slot::Down}, ex.spec.params,
      testsupport::R_entries(), testsupport::Completion::CurvatureLike);
  const Tensor Rt04 = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Down, Slot::Down}, ex.spec.params,
      testsupport::R_twin_entries(), testsupport::Completion::CurvatureLike);
  const Tensor R13 = raise_index(R04, 3, ex.g);
  const Tensor Rt13 = raise_index(Rt04, 3, ex.gt);
  CHECK(Q == Rt13 - R13);

  // flat case
  const FrameSpec flat = abelian_instance();
  const MetricPair fm = MetricPair::make(flat.g);
  const Connection fc = levi_civita(flat, fm);
  Tensor zero12(4, {Slot::Down, Slot::Down, Slot::Up}, flat.params);
  CHECK(q_tensor(fc, zero12).is_zero());
}

TEST_CASE("A is antisymmetric and invariant under the potential's sign") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi03;
  const Tensor A = a_tensor(phi12);
  CHECK(A == -permute(A, {1, 0, 2, 3}));
  CHECK(a_tensor(-phi12) == A);  // the interchange flips Phi but not A

  Tensor zero12(4, {Slot::Down, Slot::Down, Slot::Up}, ex.spec.params);
  CHECK(a_tensor(zero12).is_zero());
}

TEST_CASE("the average connection matches the example table") {
  const ExampleSetup ex;
  const Connection D = average_connection(ex.nabla, ex.nabla_twin);
  const Tensor expected = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Up}, ex.spec.params, testsupport::D_entries(),
      testsupport::Completion::None);
  CHECK(D.coefficients() == expected);
  // D = nabla + Phi/2
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi03;
  CHECK(D.coefficients() == ex.nabla.coefficients() + Rational(1, 2) * phi12);
  // equal inputs average to themselves
  CHECK(average_connection(ex.nabla, ex.nabla) == ex.nabla);
}

TEST_CASE("K and P reproduce the example tables through all routes") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi03;
  const Tensor R13 = curvature(ex.nabla, ex.spec);
  const Tensor Q13 = q_tensor(ex.nabla, phi12);
  const Tensor A13 = a_tensor(phi12);
  const Connection D = average_connection(ex.nabla, ex.nabla_twin);
  const Tensor K13 = k_tensor(D, ex.spec);
  const Tensor P13 = p_tensor(R13, Q13);

  CHECK(K13 == R13 + Rational(1, 2) * Q13 - Rational(1, 4) * A13);
  CHECK(K13 == P13 - Rational(1, 4) * A13);
  CHECK(P13 == Rational(1, 2) * (R13 + curvature(ex.nabla_twin, ex.spec)));

  const Tensor K04 = lower_index(K13, 3, ex.g);
  const Tensor P04 = lower_index(P13, 3, ex.g);
  CHECK(K04.at({1, 3, 1, 3}) == lam(ex.spec, "l1^2"));
  CHECK(K04.at({0, 1, 1, 0}) == lam(ex.spec, "1/2*l1^2 + 1/4*l2^2 + 1/4*l4^2"));
  CHECK(P04.at({0, 1, 1, 0}) == lam(ex.spec, "1/2*l1^2 + 1/2*l2^2 + 1/2*l4^2"));
  CHECK(P04.at({2, 3, 1, 0}) == lam(ex.spec, "1/2*l1^2"));
  CHECK(P04.at({1, 2, 3, 0}) == lam(ex.spec, "-1/2*l1^2"));

  const Tensor K_expected = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Down, Slot::Down}, ex.spec.params,
      testsupport::K_entries(), testsupport::Completion::Antisymmetric01);
  CHECK(K04 == K_expected);
  const Tensor P_expected = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Down, Slot::Down}, ex.spec.params,
      testsupport::P_entries(), testsupport::Completion::Antisymmetric01);
  CHECK(P04 == P_expected);
}

TEST_CASE("K vanishes exactly for the abelian algebra") {
  const FrameSpec flat = abelian_instance();
  const MetricPair m = MetricPair::make(flat.g);
  const Connection n1 = levi_civita(flat, m);
  const Connection n2 = levi_civita(flat, MetricPair::make(twin_metric(flat)));
  CHECK(k_tensor(average_connection(n1, n2), flat).is_zero());
}

TEST_CASE("classification of the example and its degenerations") {
  const ExampleSetup ex;
  const NordenObjects o = compute_objects(ex.spec, ex.g, ex.nabla, ex.nabla_twin);
  CHECK(o.cls == ClassLabel::W1);

  const NordenObjects flat = [] {
    const FrameSpec z = abelian_instance();
    const MetricPair m = MetricPair::make(z.g);
    const MetricPair mt = MetricPair::make(twin_metric(z));
    return compute_objects(z, m, levi_civita(z, m), levi_civita(z, mt));
  }();
  CHECK(flat.cls == ClassLabel::W0);
}

TEST_CASE("classification is stable under rescaling the potential") {
  const ExampleSetup ex;
  auto [phi12, phi03] = potential_phi(ex.nabla, ex.nabla_twin, ex.g);
  (void)phi12;
  auto [f, f_star] = f_forms(phi03, ex.g, ex.spec);
  (void)f_star;
  for (const Rational& c : {Rational(3), Rational(-1, 2), Rational(7, 5)}) {
    CHECK(classify(phi03 * c, f * c, ex.g, ex.spec) ==
          classify(phi03, f, ex.g, ex.spec));
  }
}

TEST_CASE("nilpotent instances land in other classes") {
  const FrameSpec h = heisenberg_instance();
  const GeometryContext ctx = build_context(h);
  CHECK(ctx.objects.cls == ClassLabel::W1W2W3);

  // [X2,X4] = X1 + 1/2 X3 gives a W2 structure
  FrameSpec b2 = abelian_instance();
  b2.c.set({1, 3, 0}, Polynomial::constant(Rational(1)));
  b2.c.set({3, 1, 0}, Polynomial::constant(Rational(-1)));
  b2.c.set({1, 3, 2}, Polynomial::constant(Rational(1, 2)));
  b2.c.set({3, 1, 2}, Polynomial::constant(Rational(-1, 2)));
  const GeometryContext ctx2 = build_context(b2);
  CHECK(ctx2.objects.cls == ClassLabel::W2);
}

TEST_CASE("the main-class closed forms agree with the generic constructions") {
  const ExampleSetup ex;
  const NordenObjects o = compute_objects(ex.spec, ex.g, ex.nabla, ex.nabla_twin);
  REQUIRE(o.cls == ClassLabel::W1);

  const W1Forms forms = w1_specials(o.f, ex.g, ex.spec, ex.nabla);
  CHECK(forms.D == o.D);
  CHECK(forms.Q == o.Q13);
  CHECK(forms.A == o.A13);

  const Tensor D_expected = testsupport::tensor_from_entries(
      4, {Slot::Down, Slot::Down, Slot::Up}, ex.spec.params, testsupport::D_entries(),
      testsupport::Completion::None);
  CHECK(forms.D.coefficients() == D_expected);
}

TEST_CASE("the closed forms degenerate correctly at zero") {
  const FrameSpec flat = abelian_instance();
  const MetricPair m = MetricPair::make(flat.g);
  const Connection conn = levi_civita(flat, m);
  Tensor zero_f(4, {Slot::Down}, flat.params);
  const W1Forms forms = w1_specials(zero_f, m, flat, conn);
  CHECK(forms.D == conn);
  CHECK(forms.Q.is_zero());
  CHECK(forms.A.is_zero());
  CHECK(forms.p.is_zero());
  CHECK(forms.h.is_zero());
}

TEST_CASE("the closed forms reject structures outside the main class") {
  const FrameSpec h = heisenberg_instance();
  const MetricPair m = MetricPair::make(h.g);
  const MetricPair mt = MetricPair::make(twin_metric(h));
  const Connection n1 = levi_civita(h, m);
  const NordenObjects o = compute_objects(h, m, n1, levi_civita(h, mt));
  REQUIRE(o.cls != ClassLabel::W1);
  REQUIRE(o.cls != ClassLabel::W0);
  CHECK_THROWS_AS(w1_specials(o.f, m, h, n1), ClassMismatchError);
}

TEST_CASE("the twin fundamental tensor composes with J in the main class") {
  const ExampleSetup ex;
  const Tensor F = fundamental_F(ex.nabla, ex.spec, ex.g);
  const Tensor Ft = fundamental_F(ex.nabla_twin, ex.spec, ex.gt);
  CHECK(Ft == compose_with(F, 0, ex.spec.J));
}
