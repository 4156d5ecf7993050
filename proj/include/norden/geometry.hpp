#pragma once

#include <optional>
#include <utility>

#include "norden/frame.hpp"
#include "norden/tensor.hpp"

namespace norden {

/// Linear connection in a left-invariant frame, stored by its coefficients:
/// nabla_{X_i} X_j = Gamma^k_{ij} X_k, variance (down i, down j, up k).
class Connection {
public:
  explicit Connection(Tensor coefficients) : coef_(std::move(coefficients)) {
    if (coef_.variance() != Variance{Slot::Down, Slot::Down, Slot::Up})
      throw StructuralError("connection coefficients must be a (1,2)-shaped tensor");
  }

  static Connection zero(int dim, VariableList vars) {
    return Connection(Tensor(dim, {Slot::Down, Slot::Down, Slot::Up}, std::move(vars)));
  }

  int dim() const { return coef_.dim(); }
  const VariableList& vars() const { return coef_.vars(); }
  const Tensor& coefficients() const { return coef_; }
  const Polynomial& at(int i, int j, int k) const { return coef_.at({i, j, k}); }
  void set(int i, int j, int k, Polynomial v) { coef_.set({i, j, k}, std::move(v)); }

  bool is_zero() const { return coef_.is_zero(); }

  friend bool operator==(const Connection& a, const Connection& b) {
    return a.coef_ == b.coef_;
  }
  friend bool operator!=(const Connection& a, const Connection& b) { return !(a == b); }

private:
  Tensor coef_;
};

/// Gamma^k_{ij} - Gamma^k_{ji} = c^k_{ij} for a torsion-free connection.
inline bool torsion_free(const Connection& conn, const FrameSpec& spec) {
  const Tensor torsion =
      conn.coefficients() - permute(conn.coefficients(), {1, 0, 2}) - spec.c;
  return torsion.is_zero();
}

/// Levi-Civita connection of an invariant metric via the Koszul formula. All
/// metric components are constant on the frame, so the derivative terms drop
/// and 2 g(nabla_{X_i} X_j, X_k) = g([X_i,X_j],X_k) + g([X_k,X_i],X_j)
/// + g([X_k,X_j],X_i).
inline Connection levi_civita(const FrameSpec& spec, const MetricPair& metric) {
  const int n = spec.dim;
  const VariableList& vars = spec.params;
  Connection conn = Connection::zero(n, vars);
  const Rational half(1, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Polynomial> rhs(static_cast<std::size_t>(n), Polynomial(vars));
      for (int k = 0; k < n; ++k) {
        Polynomial sum(vars);
        for (int l = 0; l < n; ++l) {
          sum += spec.c.at({i, j, l}) * metric.g.at({l, k});
          sum += spec.c.at({k, i, l}) * metric.g.at({l, j});
          sum += spec.c.at({k, j, l}) * metric.g.at({l, i});
        }
        rhs[static_cast<std::size_t>(k)] = sum * half;
      }
      for (int m = 0; m < n; ++m) {
        Polynomial gamma(vars);
        for (int k = 0; k < n; ++k)
          gamma += metric.g_inv.at({k, m}) * rhs[static_cast<std::size_t>(k)];
        conn.set(i, j, m, std::move(gamma));
      }
    }
  }
  return conn;
}

/// Covariant derivative of an invariant tensor (constant frame components):
/// only the Gamma-action remains. The derivative direction becomes a new
/// first down slot.
inline Tensor covariant_derivative(const Connection& conn, const Tensor& t) {
  const int n = t.dim();
  const int r = t.rank();
  Variance var{Slot::Down};
  var.insert(var.end(), t.variance().begin(), t.variance().end());
  Tensor out(n, var, t.vars());
  std::vector<int> idx = out.start_index();
  std::vector<int> src(static_cast<std::size_t>(r), 0);
  do {
    const int a = idx[0];
    Polynomial sum(t.vars());
    for (int s = 0; s < r; ++s) {
      const int is = idx[static_cast<std::size_t>(s + 1)];
      for (int m = 0; m < n; ++m) {
        for (int q = 0; q < r; ++q) src[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q + 1)];
        src[static_cast<std::size_t>(s)] = m;
        if (t.variance()[static_cast<std::size_t>(s)] == Slot::Down)
          sum -= conn.at(a, is, m) * t.at(src);
        else
          sum += conn.at(a, m, is) * t.at(src);
      }
    }
    out.set(idx, std::move(sum));
  } while (out.advance(idx));
  return out;
}

/// Curvature R(X_i,X_j)X_k = nabla_i nabla_j X_k - nabla_j nabla_i X_k
/// - nabla_{[X_i,X_j]} X_k as a (1,3) tensor (i, j, k, up).
inline Tensor curvature(const Connection& conn, const FrameSpec& spec) {
  const int n = conn.dim();
  Tensor out(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Up}, conn.vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Polynomial sum(conn.vars());
          for (int m = 0; m < n; ++m) {
            sum += conn.at(j, k, m) * conn.at(i, m, l);
            sum -= conn.at(i, k, m) * conn.at(j, m, l);
            sum -= spec.c.at({i, j, m}) * conn.at(m, k, l);
          }
          out.set({i, j, k, l}, std::move(sum));
        }
  return out;
}

/// Location and nature of the first failure of the curvature-like conditions.
struct CurvatureLikeViolation {
  std::string condition;  // "antisymmetry-first-pair" etc.
  std::vector<int> where;  // 1-based
};

inline std::optional<CurvatureLikeViolation> curvature_like_violation(const Tensor& t) {
  if (t.variance() != Variance{Slot::Down, Slot::Down, Slot::Down, Slot::Down})
    throw StructuralError("curvature-like check requires a (0,4) tensor");
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (t.at({i, j, k, l}) != -t.at({j, i, k, l}))
            return CurvatureLikeViolation{"antisymmetry-first-pair",
                                          detail::one_based({i, j, k, l})};
          if (t.at({i, j, k, l}) != -t.at({i, j, l, k}))
            return CurvatureLikeViolation{"antisymmetry-second-pair",
                                          detail::one_based({i, j, k, l})};
          Polynomial cyclic = t.at({i, j, k, l});
          cyclic += t.at({j, k, i, l});
          cyclic += t.at({k, i, j, l});
          if (!cyclic.is_zero())
            return CurvatureLikeViolation{"first-bianchi", detail::one_based({i, j, k, l})};
        }
  return std::nullopt;
}

/// True iff both antisymmetries and the first Bianchi identity hold.
inline bool curvature_like(const Tensor& t) { return !curvature_like_violation(t); }

/// Ricci tensor rho(y,z) = g^{ij} R(e_i, y, z, e_j) and scalar curvature
/// tau = g^{ij} rho(e_i, e_j).
inline std::pair<Tensor, Polynomial> ricci_and_scalar(const Tensor& r04,
                                                      const MetricPair& metric) {
  if (r04.rank() != 4) throw StructuralError("ricci expects a rank-4 tensor");
  const Tensor ricci = metric_trace(r04, 0, 3, metric);
  const Polynomial tau = scalar_value(metric_trace(ricci, 0, 1, metric));
  return {ricci, tau};
}

/// Kulkarni-Nomizu product of two (0,2) tensors, assumed symmetric:
/// (a ^ b)(x,y,z,w) = a(x,z)b(y,w) - a(y,z)b(x,w) + a(y,w)b(x,z) - a(x,w)b(y,z).
inline Tensor kulkarni_nomizu(const Tensor& a, const Tensor& b) {
  if (a.variance() != Variance{Slot::Down, Slot::Down} || b.variance() != a.variance() ||
      a.dim() != b.dim())
    throw StructuralError("Kulkarni-Nomizu product requires two (0,2) tensors");
  const int n = a.dim();
  Tensor out(n, {Slot::Down, Slot::Down, Slot::Down, Slot::Down}, a.vars());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          Polynomial v = a.at({x, z}) * b.at({y, w});
          v -= a.at({y, z}) * b.at({x, w});
          v += a.at({y, w}) * b.at({x, z});
          v -= a.at({x, w}) * b.at({y, z});
          out.set({x, y, z, w}, std::move(v));
        }
  return out;
}

/// Weyl tensor in dimension 2n >= 4:
/// W = R + g^rho/(2(n-1)) - tau g^g / (4(n-1)(2n-1)).
inline Tensor weyl(const Tensor& r04, const MetricPair& metric) {
  const int dim = r04.dim();
  if (dim < 4) throw UnsupportedError("Weyl tensor requires dimension at least 4");
  const int n = dim / 2;
  auto [ricci, tau] = ricci_and_scalar(r04, metric);
  const Rational c1(1, 2 * (n - 1));
  const Rational c2(1, 4 * (n - 1) * (2 * n - 1));
  Tensor w = r04 + c1 * kulkarni_nomizu(metric.g, ricci);
  w -= (tau * c2) * kulkarni_nomizu(metric.g, metric.g);
  return w;
}

/// Exterior derivative of an invariant 1-form:
/// d omega(X_i, X_j) = -omega([X_i, X_j]).
inline Tensor exterior_derivative_1form(const Tensor& omega, const FrameSpec& spec) {
  if (omega.variance() != Variance{Slot::Down})
    throw StructuralError("exterior derivative expects a (0,1) tensor");
  const int n = spec.dim;
  Tensor out(n, {Slot::Down, Slot::Down}, omega.vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Polynomial v(omega.vars());
      for (int k = 0; k < n; ++k) v -= spec.c.at({i, j, k}) * omega.at({k});
      out.set({i, j}, std::move(v));
    }
  return out;
}

}  // namespace norden
