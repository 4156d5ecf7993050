#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "norden/objects.hpp"

namespace norden {

/// One Gamma coefficient to corrupt, for sensitivity testing of the suite.
struct GammaMutation {
  bool twin_side;  // false: the role connection, true: the twin connection
  int i, j, k;     // 0-based coefficient position
  Rational delta;
};

/// The full bundle the invariance suite runs on: a role metric, its twin,
/// both Levi-Civita connections, and the derived objects for both choices of
/// primary metric. The twin side's opposite connection is re-derived from the
/// twin of the twin metric (-g); Levi-Civita is scale invariant, so on a
/// clean build it coincides with the role connection.
struct GeometryContext {
  FrameSpec spec;
  MetricPair role;
  Tensor twin_tensor;
  MetricPair twin_pair;
  Connection conn;        // Levi-Civita of the role metric
  Connection conn_twin;   // Levi-Civita of the twin metric
  NordenObjects objects;       // role metric primary
  NordenObjects objects_twin;  // twin metric primary
};

namespace detail {

inline GeometryContext build_from_role(const FrameSpec& spec, const MetricPair& role,
                                       const std::optional<GammaMutation>& mutation) {
  const Tensor twin_tensor = twin_of_metric(spec.J, role.g);
  const MetricPair twin_pair = MetricPair::make(twin_tensor);

  Connection conn = levi_civita(spec, role);
  Connection conn_twin = levi_civita(spec, twin_pair);
  if (mutation) {
    Connection& target = mutation->twin_side ? conn_twin : conn;
    target.set(mutation->i, mutation->j, mutation->k,
               target.at(mutation->i, mutation->j, mutation->k) +
                   Polynomial::constant(mutation->delta, spec.params));
  }

  // Opposite connection of the twin side: Levi-Civita of the twin's own twin
  // metric. Built fresh from the spec, so it stays clean under mutation.
  const MetricPair back_pair = MetricPair::make(twin_of_metric(spec.J, twin_tensor));
  const Connection conn_back = levi_civita(spec, back_pair);

  const bool strict = !mutation.has_value();
  NordenObjects objects = compute_objects(spec, role, conn, conn_twin, strict);
  NordenObjects objects_twin = compute_objects(spec, twin_pair, conn_twin, conn_back, strict);

  return GeometryContext{spec,
                         role,
                         twin_tensor,
                         twin_pair,
                         std::move(conn),
                         std::move(conn_twin),
                         std::move(objects),
                         std::move(objects_twin)};
}

}  // namespace detail

/// Validates the spec and assembles the context with the spec's g as the
/// role metric.
inline GeometryContext build_context(const FrameSpec& spec,
                                     const std::optional<GammaMutation>& mutation = {}) {
  require_valid(spec);
  return detail::build_from_role(spec, MetricPair::make(spec.g), mutation);
}

/// The context with the two metric roles exchanged: the old twin metric
/// becomes primary and its twin (-g) takes the secondary role. The primary
/// objects of the result equal objects_twin of the input.
inline GeometryContext twin_of(const GeometryContext& ctx) {
  return detail::build_from_role(ctx.spec, ctx.twin_pair, std::nullopt);
}

enum class CheckStatus { InvariantVerified, AntiInvariantVerified, Failed };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::InvariantVerified: return "invariant-verified";
    case CheckStatus::AntiInvariantVerified: return "anti-invariant-verified";
    case CheckStatus::Failed: return "failed";
  }
  return "?";
}

struct InvarianceCheck {
  int number;
  std::string id;
  std::string description;
  CheckStatus status;
  std::string failing_object;     // empty unless failed
  std::vector<int> failing_index;  // 1-based, empty unless failed
};

struct InvarianceReport {
  std::vector<InvarianceCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvarianceCheck& c) {
      return c.status != CheckStatus::Failed;
    });
  }
  int failed_count() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                          [](const InvarianceCheck& c) {
                                            return c.status == CheckStatus::Failed;
                                          }));
  }
};

namespace detail {

struct Comparison {
  std::string object;
  Tensor lhs;
  Tensor rhs;
};

inline InvarianceCheck run_check(int number, std::string id, std::string description,
                                 bool anti, const std::vector<Comparison>& comparisons,
                                 bool extra_ok = true, std::string extra_label = {}) {
  InvarianceCheck result{number, std::move(id), std::move(description),
                         anti ? CheckStatus::AntiInvariantVerified
                              : CheckStatus::InvariantVerified,
                         {}, {}};
  if (!extra_ok) {
    result.status = CheckStatus::Failed;
    result.failing_object = std::move(extra_label);
    return result;
  }
  for (const Comparison& c : comparisons) {
    if (auto idx = Tensor::first_difference(c.lhs, c.rhs)) {
      result.status = CheckStatus::Failed;
      result.failing_object = c.object;
      result.failing_index = one_based(*idx);
      return result;
    }
  }
  return result;
}

/// Right-hand side of the fundamental-tensor interchange relation:
/// (F(Jy,z,x) - F(y,Jz,x) + F(Jz,y,x) - F(z,Jy,x)) / 2.
inline Tensor twin_F_from_F(const Tensor& F, const FrameSpec& spec) {
  const Tensor FJ0 = compose_with(F, 0, spec.J);
  const Tensor FJ1 = compose_with(F, 1, spec.J);
  Tensor rhs = permute(FJ0, {1, 2, 0});   // F(Jy, z, x)
  rhs -= permute(FJ1, {1, 2, 0});         // F(y, Jz, x)
  rhs += permute(FJ0, {2, 1, 0});         // F(Jz, y, x)
  rhs -= permute(FJ1, {2, 1, 0});         // F(z, Jy, x)
  return rhs * Rational(1, 2);
}

}  // namespace detail

/// Runs the thirteen interchange checks. Every check is a componentwise
/// polynomial identity between independently constructed objects; failures
/// are reported with the first differing component, never thrown.
inline InvarianceReport invariance_suite(const GeometryContext& ctx) {
  const NordenObjects& o = ctx.objects;
  const NordenObjects& t = ctx.objects_twin;
  const FrameSpec& spec = ctx.spec;
  const Rational half(1, 2), quarter(1, 4);

  InvarianceReport report;

  report.checks.push_back(detail::run_check(
      1, "potential-anti-invariance",
      "the potential changes sign, and its lowered form composes with J",
      true,
      {{"Phi", t.phi12, -o.phi12},
       {"Phi(0,3)", t.phi03, -compose_with(o.phi03, 2, spec.J)}}));

  report.checks.push_back(detail::run_check(
      2, "fundamental-tensor-relation",
      "the twin fundamental tensor equals its expression through F and J",
      false, {{"F-twin", t.F, detail::twin_F_from_F(o.F, spec)}}));

  report.checks.push_back(detail::run_check(
      3, "potential-trace-invariance", "the trace forms f and f* are unchanged", false,
      {{"f", t.f, o.f}, {"f*", t.f_star, o.f_star}}));

  report.checks.push_back(detail::run_check(
      4, "lee-form-invariance", "the Lee forms theta and theta* are unchanged", false,
      {{"theta", t.theta, o.theta}, {"theta*", t.theta_star, o.theta_star}}));

  {
    const bool same = o.cls == t.cls;
    InvarianceCheck c{5, "class-invariance", "both metrics determine the same class",
                      same ? CheckStatus::InvariantVerified : CheckStatus::Failed,
                      {}, {}};
    if (!same)
      c.failing_object = "class " + to_string(o.cls) + " vs " + to_string(t.cls);
    report.checks.push_back(std::move(c));
  }

  report.checks.push_back(detail::run_check(
      6, "average-connection-invariance", "the average connection is unchanged", false,
      {{"D", t.D.coefficients(), o.D.coefficients()}}));

  report.checks.push_back(detail::run_check(
      7, "nijenhuis-invariance",
      "the Nijenhuis tensor is unchanged; its lowered form composes with J", false,
      {{"N", t.N12, o.N12},
       {"N(0,3)", lower_index(t.N12, 2, ctx.twin_pair),
        compose_with(lower_index(o.N12, 2, ctx.role), 2, spec.J)}}));

  report.checks.push_back(detail::run_check(
      8, "associated-nijenhuis-anti-invariance",
      "the associated Nijenhuis tensor changes sign; its lowered form composes with J",
      true,
      {{"S", t.S12, -o.S12},
       {"S(0,3)", lower_index(t.S12, 2, ctx.twin_pair),
        -compose_with(lower_index(o.S12, 2, ctx.role), 2, spec.J)}}));

  report.checks.push_back(detail::run_check(
      9, "quadratic-part-invariance", "the quadratic part A is unchanged", false,
      {{"A", t.A13, o.A13}}));

  report.checks.push_back(detail::run_check(
      10, "curvature-correction-anti-invariance", "the correction Q changes sign", true,
      {{"Q", t.Q13, -o.Q13}}));

  report.checks.push_back(detail::run_check(
      11, "average-curvature-consistency",
      "the curvature of D is unchanged and equals R + Q/2 - A/4 on both sides", false,
      {{"K", t.K13, o.K13},
       {"K-via-RQA", t.R13 + half * t.Q13 - quarter * t.A13, o.K13}}));

  report.checks.push_back(detail::run_check(
      12, "average-curvature-invariance",
      "the average curvature P is unchanged and equals (R + R-twin)/2", false,
      {{"P", t.P13, o.P13},
       {"P-via-average", half * (o.R13 + t.R13), o.P13}}));

  {
    // K = 0 iff R = -Q/2 + A/4, and P = 0 iff R = -Q/2, with each side of
    // both equivalences evaluated on its own construction.
    const bool k_zero = o.K13.is_zero();
    const bool k_rhs = (o.R13 + half * o.Q13 - quarter * o.A13).is_zero();
    const Tensor p_avg = half * (o.R13 + t.R13);
    const bool p_zero = p_avg.is_zero();
    const bool p_rhs = (o.R13 + half * o.Q13).is_zero();
    const bool ok = (k_zero == k_rhs) && (p_zero == p_rhs);
    InvarianceCheck c{13, "vanishing-equivalences",
                      "K and P vanish exactly when their curvature expressions do",
                      ok ? CheckStatus::InvariantVerified : CheckStatus::Failed,
                      {}, {}};
    if (!ok) c.failing_object = (k_zero == k_rhs) ? "P" : "K";
    report.checks.push_back(std::move(c));
  }

  return report;
}

/// If the average connection vanishes, both structures must be flat Kaehler
/// type: both connections zero, the potential zero, class W0. Vacuously true
/// when D is nonzero.
inline bool corollary1_check(const GeometryContext& ctx) {
  if (!ctx.objects.D.is_zero()) return true;
  return ctx.conn.is_zero() && ctx.conn_twin.is_zero() && ctx.objects.phi12.is_zero() &&
         ctx.objects.cls == ClassLabel::W0 && ctx.objects_twin.cls == ClassLabel::W0;
}

/// Criteria report for the example family: (i) closedness of the Lee forms,
/// (ii) conformal flatness, (iii) scalar flatness and isotropy. Conditions
/// are returned as primitive-normalized polynomials with positive leading
/// coefficient, deduplicated and sorted.
struct Theorem3Report {
  bool lee_forms_closed;
  std::vector<Polynomial> closedness_conditions;
  bool conformally_flat;         // both Weyl tensors vanish
  bool curvature_form_identity;  // R = -g^rho/(2(n-1)) + tau g^g/(4(n-1)(2n-1)), both sides
  bool scalar_flat;
  bool isotropic_kahler;
  std::vector<Polynomial> flatness_conditions;
};

namespace detail {

inline void collect_conditions(const Tensor& t, std::vector<Polynomial>& out) {
  std::vector<int> idx = t.start_index();
  if (t.rank() == 0) return;
  do {
    const Polynomial& p = t.at(idx);
    if (!p.is_zero()) out.push_back(p.primitive_normalized());
  } while (t.advance(idx));
}

inline void collect_condition(const Polynomial& p, std::vector<Polynomial>& out) {
  if (!p.is_zero()) out.push_back(p.primitive_normalized());
}

inline std::vector<Polynomial> dedupe_sorted(std::vector<Polynomial> conditions) {
  std::sort(conditions.begin(), conditions.end(), polynomial_order_less);
  conditions.erase(std::unique(conditions.begin(), conditions.end()), conditions.end());
  return conditions;
}

}  // namespace detail

inline Theorem3Report theorem3_criteria(const GeometryContext& ctx) {
  const NordenObjects& o = ctx.objects;
  const NordenObjects& t = ctx.objects_twin;
  const int n = ctx.spec.dim / 2;

  std::vector<Polynomial> closed;
  detail::collect_conditions(o.dtheta, closed);
  detail::collect_conditions(o.dtheta_star, closed);
  const bool lee_closed = closed.empty();

  const bool w_zero = o.weyl04.is_zero() && t.weyl04.is_zero();
  const Rational c1(1, 2 * (n - 1));
  const Rational c2(1, 4 * (n - 1) * (2 * n - 1));
  const Tensor lhs = o.R04 + c1 * kulkarni_nomizu(ctx.role.g, o.ricci) -
                     (o.tau * c2) * kulkarni_nomizu(ctx.role.g, ctx.role.g);
  const Tensor lhs_twin = t.R04 + c1 * kulkarni_nomizu(ctx.twin_pair.g, t.ricci) -
                          (t.tau * c2) * kulkarni_nomizu(ctx.twin_pair.g, ctx.twin_pair.g);
  const bool form_identity = lhs.is_zero() && lhs_twin.is_zero();

  std::vector<Polynomial> flat;
  detail::collect_condition(o.tau, flat);
  detail::collect_condition(t.tau, flat);
  const bool scalar_flat = o.tau.is_zero() && t.tau.is_zero();
  detail::collect_condition(o.nablaJ_sqnorm, flat);
  detail::collect_condition(t.nablaJ_sqnorm, flat);
  const bool isotropic = o.nablaJ_sqnorm.is_zero() && t.nablaJ_sqnorm.is_zero();

  return Theorem3Report{lee_closed,
                        detail::dedupe_sorted(std::move(closed)),
                        w_zero,
                        form_identity,
                        scalar_flat,
                        isotropic,
                        detail::dedupe_sorted(std::move(flat))};
}

}  // namespace norden
