#pragma once

#include <string>
#include <utility>

#include "norden/geometry.hpp"

namespace norden {

namespace detail {

inline std::string index_string(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  s += ')';
  return s;
}

}  // namespace detail

/// Fundamental tensor F(x,y,z) = g((nabla_x J) y, z). Verifies the defining
/// symmetries F(x,y,z) = F(x,z,y) = F(x,Jy,Jz) unless told not to.
inline Tensor fundamental_F(const Connection& conn, const FrameSpec& spec,
                            const MetricPair& metric, bool verify = true) {
  const Tensor nabla_J = covariant_derivative(conn, spec.J);  // (a, j, m-up)
  const Tensor F = lower_index(nabla_J, 2, metric);
  if (verify) {
    if (auto idx = Tensor::first_difference(F, permute(F, {0, 2, 1})))
      throw ConsistencyError("fundamental tensor is not symmetric in its last two slots at " +
                             detail::index_string(detail::one_based(*idx)));
    const Tensor FJJ = compose_with(compose_with(F, 1, spec.J), 2, spec.J);
    if (auto idx = Tensor::first_difference(F, FJJ))
      throw ConsistencyError("fundamental tensor violates F(x,y,z) = F(x,Jy,Jz) at " +
                             detail::index_string(detail::one_based(*idx)));
  }
  return F;
}

/// Lee forms theta(z) = g^{ij} F(e_i, e_j, z) and
/// theta*(z) = g^{ij} F(e_i, J e_j, z).
inline std::pair<Tensor, Tensor> lee_forms(const Tensor& F, const MetricPair& metric,
                                           const FrameSpec& spec) {
  const Tensor theta = metric_trace(F, 0, 1, metric);
  const Tensor theta_star = metric_trace(compose_with(F, 1, spec.J), 0, 1, metric);
  return {theta, theta_star};
}

/// Potential Phi(x,y) = conn_twin applied minus conn applied, as a (1,2)
/// tensor together with its g-lowered (0,3) form. Both inputs torsion-free
/// over the same frame forces symmetry; an asymmetric difference is reported
/// as a connection error.
inline std::pair<Tensor, Tensor> potential_phi(const Connection& conn,
                                               const Connection& conn_twin,
                                               const MetricPair& metric,
                                               bool verify = true) {
  const Tensor phi12 = conn_twin.coefficients() - conn.coefficients();
  if (verify) {
    if (auto idx = Tensor::first_difference(phi12, permute(phi12, {1, 0, 2})))
      throw ConnectionError("potential is not symmetric at " +
                            detail::index_string(detail::one_based(*idx)) +
                            "; an input connection carries torsion");
  }
  return {phi12, lower_index(phi12, 2, metric)};
}

/// Potential from the fundamental tensor:
/// Phi(x,y,z) = (F(Jz,x,y) - F(x,y,Jz) - F(y,x,Jz)) / 2.
inline Tensor phi_from_F(const Tensor& F, const FrameSpec& spec) {
  const Tensor FJ0 = compose_with(F, 0, spec.J);
  const Tensor FJ2 = compose_with(F, 2, spec.J);
  Tensor phi = permute(FJ0, {2, 0, 1});  // F(Jz, x, y)
  phi -= FJ2;                            // F(x, y, Jz)
  phi -= permute(FJ2, {1, 0, 2});        // F(y, x, Jz)
  return phi * Rational(1, 2);
}

/// Inverse relation F(x,y,z) = Phi(x,y,Jz) + Phi(x,z,Jy).
inline Tensor f_from_phi(const Tensor& phi03, const FrameSpec& spec) {
  const Tensor phiJ2 = compose_with(phi03, 2, spec.J);
  return phiJ2 + permute(phiJ2, {0, 2, 1});
}

/// Trace 1-forms of the potential: f(z) = g^{ij} Phi(e_i, e_j, z),
/// f*(z) = g^{ij} Phi(e_i, J e_j, z).
inline std::pair<Tensor, Tensor> f_forms(const Tensor& phi03, const MetricPair& metric,
                                         const FrameSpec& spec) {
  const Tensor f = metric_trace(phi03, 0, 1, metric);
  const Tensor f_star = metric_trace(compose_with(phi03, 1, spec.J), 0, 1, metric);
  return {f, f_star};
}

/// Nijenhuis tensor N(x,y) = [Jx,Jy] - [x,y] - J[Jx,y] - J[x,Jy], built from
/// the structure constants and J alone.
inline Tensor nijenhuis(const FrameSpec& spec) {
  const Tensor& c = spec.c;
  Tensor n = compose_with(compose_with(c, 0, spec.J), 1, spec.J);
  n -= c;
  n -= compose_with(compose_with(c, 0, spec.J), 2, spec.J);
  n -= compose_with(compose_with(c, 1, spec.J), 2, spec.J);
  return n;
}

/// Associated Nijenhuis tensor S(x,y) = {Jx,Jy} - {x,y} - J{Jx,y} - J{x,Jy}
/// with the symmetric braces {x,y} = nabla_x y + nabla_y x.
inline Tensor associated_nijenhuis(const Connection& conn, const FrameSpec& spec) {
  const Tensor braces = conn.coefficients() + permute(conn.coefficients(), {1, 0, 2});
  Tensor s = compose_with(compose_with(braces, 0, spec.J), 1, spec.J);
  s -= braces;
  s -= compose_with(compose_with(braces, 0, spec.J), 2, spec.J);
  s -= compose_with(compose_with(braces, 1, spec.J), 2, spec.J);
  return s;
}

/// Square norm of nabla J: g^{ij} g^{kl} g^{pq} F_{ikp} F_{jlq}.
inline Polynomial square_norm_nablaJ(const Tensor& F, const MetricPair& metric) {
  const Tensor raised = raise_index(raise_index(raise_index(F, 0, metric), 1, metric), 2, metric);
  Polynomial sum(F.vars());
  std::vector<int> idx = F.start_index();
  do {
    sum += F.at(idx) * raised.at(idx);
  } while (F.advance(idx));
  return sum;
}

/// Curvature correction Q(x,y)z = (nabla_x Phi)(y,z) - (nabla_y Phi)(x,z)
/// + Phi(x, Phi(y,z)) - Phi(y, Phi(x,z)), so that the twin curvature is
/// R + Q.
inline Tensor q_tensor(const Connection& conn, const Tensor& phi12) {
  const int n = phi12.dim();
  const Tensor dphi = covariant_derivative(conn, phi12);  // (a, i, j, k-up)
  Tensor out(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Up}, phi12.vars());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int l = 0; l < n; ++l) {
          Polynomial v = dphi.at({x, y, z, l}) - dphi.at({y, x, z, l});
          for (int m = 0; m < n; ++m) {
            v += phi12.at({x, m, l}) * phi12.at({y, z, m});
            v -= phi12.at({y, m, l}) * phi12.at({x, z, m});
          }
          out.set({x, y, z, l}, std::move(v));
        }
  return out;
}

/// Quadratic part A(x,y)z = Phi(x, Phi(y,z)) - Phi(y, Phi(x,z)).
inline Tensor a_tensor(const Tensor& phi12) {
  const int n = phi12.dim();
  Tensor out(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Up}, phi12.vars());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int l = 0; l < n; ++l) {
          Polynomial v(phi12.vars());
          for (int m = 0; m < n; ++m) {
            v += phi12.at({x, m, l}) * phi12.at({y, z, m});
            v -= phi12.at({y, m, l}) * phi12.at({x, z, m});
          }
          out.set({x, y, z, l}, std::move(v));
        }
  return out;
}

/// Average connection D = (conn + conn_twin) / 2 = conn + Phi/2.
inline Connection average_connection(const Connection& conn, const Connection& conn_twin) {
  return Connection((conn.coefficients() + conn_twin.coefficients()) * Rational(1, 2));
}

/// Curvature of the average connection, cross-checked against
/// K = R + Q/2 - A/4 when the pieces are supplied.
inline Tensor k_tensor(const Connection& average, const FrameSpec& spec) {
  return curvature(average, spec);
}

/// Average curvature P = R + Q/2 (equivalently (R + R_twin)/2 as (1,3)).
inline Tensor p_tensor(const Tensor& r13, const Tensor& q13) {
  return r13 + Rational(1, 2) * q13;
}

enum class ClassLabel { W0, W1, W2, W3, W1W2, W1W3, W2W3, W1W2W3 };

inline std::string to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::W0: return "W0";
    case ClassLabel::W1: return "W1";
    case ClassLabel::W2: return "W2";
    case ClassLabel::W3: return "W3";
    case ClassLabel::W1W2: return "W1+W2";
    case ClassLabel::W1W3: return "W1+W3";
    case ClassLabel::W2W3: return "W2+W3";
    case ClassLabel::W1W2W3: return "W1+W2+W3";
  }
  return "?";
}

namespace detail {

/// (1/s) { g(x,y) f(z) + g(x,Jy) f(Jz) } as a (0,3) tensor.
inline Tensor metric_form_combination(const Tensor& f, const MetricPair& metric,
                                      const FrameSpec& spec, const Rational& scale) {
  const int n = spec.dim;
  const Tensor gt = twin_of_metric(spec.J, metric.g);
  const Tensor fJ = compose_with(f, 0, spec.J);
  Tensor out(n, {Slot::Down, Slot::Down, Slot::Down}, f.vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Polynomial v = metric.g.at({i, j}) * f.at({k});
        v += gt.at({i, j}) * fJ.at({k});
        out.set({i, j, k}, v * scale);
      }
  return out;
}

}  // namespace detail

/// Minimal class of the almost Norden structure, decided on the potential:
///   W0:      Phi = 0
///   W1:      Phi(x,y,z) = (1/2n){g(x,y)f(z) + g(x,Jy)f(Jz)}
///   W2:      Phi(x,y,z) = -Phi(Jx,Jy,z) and f = 0
///   W3:      Phi(x,y,z) =  Phi(Jx,Jy,z)
///   W1+W2:   Phi(x,y,z) = -Phi(Jx,Jy,z)
///   W1+W3:   Phi(x,y,z) - Phi(Jx,Jy,z) = (1/n){g(x,y)f(z) + g(x,Jy)f(Jz)}
///   W2+W3:   f = 0
/// The equivalent conditions on the fundamental tensor are evaluated as a
/// consistency check; a disagreement signals a convention bug.
inline ClassLabel classify(const Tensor& phi03, const Tensor& f, const MetricPair& metric,
                           const FrameSpec& spec, bool cross_check = true) {
  const int n2 = spec.dim;  // 2n
  const Tensor phiJJ = compose_with(compose_with(phi03, 0, spec.J), 1, spec.J);

  const bool w0 = phi03.is_zero();
  const bool w1 =
      (phi03 - detail::metric_form_combination(f, metric, spec, Rational(1, n2))).is_zero();
  const bool anti = (phi03 + phiJJ).is_zero();
  const bool w3 = (phi03 - phiJJ).is_zero();
  const bool f0 = f.is_zero();
  const bool w1w3 =
      (phi03 - phiJJ -
       detail::metric_form_combination(f, metric, spec, Rational(2, n2)))
          .is_zero();

  if (cross_check) {
    // Conditions on F: the W1 closed form, the cyclic J-sum with theta = 0
    // for W2, and the plain cyclic sum for W3 must agree with the potential
    // conditions above.
    const Tensor F = f_from_phi(phi03, spec);
    const Tensor theta = compose_with(f, 0, spec.J);  // theta = f o J
    const Tensor gt = twin_of_metric(spec.J, metric.g);
    const Tensor thetaJ = compose_with(theta, 0, spec.J);
    Tensor w1_rhs(n2, {Slot::Down, Slot::Down, Slot::Down}, f.vars());
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int k = 0; k < n2; ++k) {
          Polynomial v = metric.g.at({i, j}) * theta.at({k});
          v += gt.at({i, j}) * thetaJ.at({k});
          v += metric.g.at({i, k}) * theta.at({j});
          v += gt.at({i, k}) * thetaJ.at({j});
          w1_rhs.set({i, j, k}, v * Rational(1, n2));
        }
    const bool w1_f = (F - w1_rhs).is_zero();
    const Tensor FJ2 = compose_with(F, 2, spec.J);
    const Tensor w2_sum = FJ2 + permute(FJ2, {2, 0, 1}) + permute(FJ2, {1, 2, 0});
    const bool w2_f = w2_sum.is_zero() && theta.is_zero();
    const Tensor w3_sum = F + permute(F, {2, 0, 1}) + permute(F, {1, 2, 0});
    const bool w3_f = w3_sum.is_zero();
    if (w1 != w1_f || (anti && f0) != w2_f || w3 != w3_f)
      throw ConsistencyError("class conditions on the potential and on the fundamental "
                             "tensor disagree");
  }

  if (w0) return ClassLabel::W0;
  if (w1) return ClassLabel::W1;
  if (anti && f0) return ClassLabel::W2;
  if (w3) return ClassLabel::W3;
  if (anti) return ClassLabel::W1W2;
  if (w1w3) return ClassLabel::W1W3;
  if (f0) return ClassLabel::W2W3;
  return ClassLabel::W1W2W3;
}

/// Closed forms available in the main class W1, where the potential is
/// expressed through the metric and the trace form f:
///   D_x y   = nabla_x y + (1/4n){g(x,y) f# + g(x,Jy) J f#}
///   Q(x,y)z = (1/2n){g(y,z) p(x) + g(y,Jz) q(x) - g(x,z) p(y) - g(x,Jz) q(y)}
///   A(x,y)z = (1/4n^2){g(y,z) h(x) + g(y,Jz) h(Jx) - g(x,z) h(y) - g(x,Jz) h(Jy)}
/// with p(x) = nabla_x f# + (1/2n) f(x) f#,
///      q(x) = J p(x) + (1/2n){f(Jf#) x - f(f#) Jx},
///      h(x) = f(x) f# + f(Jx) J f#.
/// Each piece of this reduction is verified against the generic
/// constructions in the test suites.
struct W1Forms {
  Connection D;
  Tensor Q;  // (1,3)
  Tensor A;  // (1,3)
  Tensor p;  // (1,1)
  Tensor h;  // (1,1)
};

inline W1Forms w1_specials(const Tensor& f, const MetricPair& metric, const FrameSpec& spec,
                           const Connection& conn) {
  const int dim = spec.dim;
  const int n = dim / 2;
  const VariableList& vars = spec.params;

  {
    const Tensor F = fundamental_F(conn, spec, metric);
    const Tensor phi03 = phi_from_F(F, spec);
    auto [f_check, f_star] = f_forms(phi03, metric, spec);
    (void)f_star;
    if (f_check != f)
      throw ConsistencyError("supplied trace form does not match the connection");
    const ClassLabel label = classify(phi03, f, metric, spec);
    if (label != ClassLabel::W1 && label != ClassLabel::W0)
      throw ClassMismatchError("closed forms require class W1, structure is " +
                               to_string(label));
  }

  const Tensor gt = twin_of_metric(spec.J, metric.g);
  const Tensor f_sharp = raise_index(f, 0, metric);             // (1,0), slot up
  const Tensor Jf_sharp = compose_with(f_sharp, 0, spec.J);     // J f#
  const Tensor fJ = compose_with(f, 0, spec.J);                 // f(J .)

  // D_x y = nabla_x y + (1/4n){ g(x,y) f# + g(x,Jy) J f# }
  Tensor d_coef = conn.coefficients();
  const Rational quarter_n(1, 4 * n);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Polynomial v = metric.g.at({i, j}) * f_sharp.at({k});
        v += gt.at({i, j}) * Jf_sharp.at({k});
        d_coef.add_at(std::vector<int>{i, j, k}, v * quarter_n);
      }

  // Scalars f(f#) and f(Jf#).
  Polynomial f_of_sharp(vars), f_of_Jsharp(vars);
  for (int a = 0; a < dim; ++a) {
    f_of_sharp += f.at({a}) * f_sharp.at({a});
    f_of_Jsharp += f.at({a}) * Jf_sharp.at({a});
  }

  const Rational half_n(1, 2 * n);

  // p(x) = nabla_x f# + (1/2n) f(x) f#, stored (x, up).
  Tensor p(dim, {Slot::Down, Slot::Up}, vars);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      Polynomial v(vars);
      for (int m = 0; m < dim; ++m) v += conn.at(i, m, k) * f_sharp.at({m});
      p.set({i, k}, v + (f.at({i}) * f_sharp.at({k})) * half_n);
    }

  // q(x) = J p(x) + (1/2n){ f(Jf#) x - f(f#) Jx }, stored (x, up).
  Tensor q_vec = compose_with(p, 1, spec.J);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      Polynomial corr(vars);
      if (i == k) corr += f_of_Jsharp;
      corr -= f_of_sharp * spec.J.at({i, k});
      q_vec.set({i, k}, q_vec.at({i, k}) + corr * half_n);
    }

  // h(x) = f(x) f# + f(Jx) J f#, stored (x, up).
  Tensor h(dim, {Slot::Down, Slot::Up}, vars);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      h.set({i, k}, f.at({i}) * f_sharp.at({k}) + fJ.at({i}) * Jf_sharp.at({k}));

  const Tensor hJ = compose_with(h, 0, spec.J);  // h evaluated at Jx

  Tensor q(dim, {Slot::Down, Slot::Down, Slot::Down, Slot::Up}, vars);
  Tensor a(dim, {Slot::Down, Slot::Down, Slot::Down, Slot::Up}, vars);
  const Rational quarter_nn(1, 4 * n * n);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z)
        for (int l = 0; l < dim; ++l) {
          Polynomial qv = metric.g.at({y, z}) * p.at({x, l});
          qv += gt.at({y, z}) * q_vec.at({x, l});
          qv -= metric.g.at({x, z}) * p.at({y, l});
          qv -= gt.at({x, z}) * q_vec.at({y, l});
          q.set({x, y, z, l}, qv * half_n);
          Polynomial av = metric.g.at({y, z}) * h.at({x, l});
          av += gt.at({y, z}) * hJ.at({x, l});
          av -= metric.g.at({x, z}) * h.at({y, l});
          av -= gt.at({x, z}) * hJ.at({y, l});
          a.set({x, y, z, l}, av * quarter_nn);
        }

  return W1Forms{Connection(std::move(d_coef)), std::move(q), std::move(a), std::move(p),
                 std::move(h)};
}

/// Everything the twin-interchange suite consumes, computed for one choice of
/// which metric plays the primary role.
struct NordenObjects {
  Tensor F;            // (0,3)
  Tensor theta;        // (0,1)
  Tensor theta_star;   // (0,1)
  Tensor phi12;        // (1,2): conn_other minus conn_role
  Tensor phi03;        // (0,3), lowered with the role metric
  Tensor f;            // (0,1)
  Tensor f_star;       // (0,1)
  Tensor N12;          // (1,2)
  Tensor S12;          // (1,2)
  Polynomial nablaJ_sqnorm;
  Tensor R13;          // curvature of the role connection
  Tensor R04;          // lowered with the role metric
  Tensor ricci;        // (0,2)
  Polynomial tau;
  Tensor weyl04;       // (0,4)
  Tensor Q13;
  Tensor A13;
  Connection D;
  Tensor K13;          // curvature of D
  Tensor P13;          // R + Q/2
  Tensor dtheta;       // (0,2)
  Tensor dtheta_star;  // (0,2)
  ClassLabel cls;
};

/// Builds the full object set from a role metric and the pair of Levi-Civita
/// connections. With `strict`, the internal cross-relations (symmetries of F,
/// symmetry of the potential, the two constructions of the potential, the
/// trace-form identities, R_other = R + Q, and the two routes to K) are
/// enforced; a corrupted input is meant to run with strict = false so the
/// invariance suite can report instead.
inline NordenObjects compute_objects(const FrameSpec& spec, const MetricPair& role,
                                     const Connection& conn_role,
                                     const Connection& conn_other, bool strict = true) {
  const Tensor F = fundamental_F(conn_role, spec, role, strict);
  auto [theta, theta_star] = lee_forms(F, role, spec);
  auto [phi12, phi03] = potential_phi(conn_role, conn_other, role, strict);
  auto [f, f_star] = f_forms(phi03, role, spec);

  if (strict) {
    if (phi03 != phi_from_F(F, spec))
      throw ConsistencyError("the two constructions of the potential disagree");
    if (theta_star != -compose_with(theta, 0, spec.J))
      throw ConsistencyError("theta* = -theta o J fails");
    if (f != theta_star || f_star != -theta)
      throw ConsistencyError("trace forms of the potential do not match the Lee forms");
  }

  const Tensor R13 = curvature(conn_role, spec);
  const Tensor R04 = lower_index(R13, 3, role);
  auto [ricci, tau] = ricci_and_scalar(R04, role);

  const Tensor Q13 = q_tensor(conn_role, phi12);
  if (strict && curvature(conn_other, spec) != R13 + Q13)
    throw ConsistencyError("curvature of the other connection is not R + Q");
  const Tensor A13 = a_tensor(phi12);
  Connection D = average_connection(conn_role, conn_other);
  const Tensor K13 = k_tensor(D, spec);
  if (strict &&
      K13 != R13 + Rational(1, 2) * Q13 - Rational(1, 4) * A13)
    throw ConsistencyError("curvature of the average connection is not R + Q/2 - A/4");

  return NordenObjects{F,
                       theta,
                       theta_star,
                       phi12,
                       phi03,
                       f,
                       f_star,
                       nijenhuis(spec),
                       associated_nijenhuis(conn_role, spec),
                       square_norm_nablaJ(F, role),
                       R13,
                       R04,
                       ricci,
                       tau,
                       weyl(R04, role),
                       Q13,
                       A13,
                       std::move(D),
                       K13,
                       p_tensor(R13, Q13),
                       exterior_derivative_1form(theta, spec),
                       exterior_derivative_1form(theta_star, spec),
                       classify(phi03, f, role, spec, strict)};
}

}  // namespace norden
