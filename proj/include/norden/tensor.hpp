#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "norden/errors.hpp"
#include "norden/polynomial.hpp"

namespace norden {

enum class Slot : std::uint8_t { Up, Down };

/// Ordered variance signature, one entry per argument slot.
using Variance = std::vector<Slot>;

inline std::string to_string(const Variance& v) {
  std::string s;
  for (Slot slot : v) s += (slot == Slot::Up) ? 'u' : 'd';
  return s;
}

/// Dense tensor over a frame of the given dimension. Slot 0 is the leftmost
/// argument; for operator-valued tensors (connection coefficients, curvature)
/// the output index is the final up slot, so that lowering it reproduces the
/// usual (0,k) component ordering.
class Tensor {
public:
  Tensor(int dim, Variance variance, VariableList vars)
      : dim_(dim), variance_(std::move(variance)), vars_(std::move(vars)) {
    if (dim_ <= 0) throw StructuralError("tensor dimension must be positive");
    std::size_t size = 1;
    for (std::size_t i = 0; i < variance_.size(); ++i) size *= static_cast<std::size_t>(dim_);
    components_.assign(size, Polynomial(vars_));
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const Variance& variance() const { return variance_; }
  const VariableList& vars() const { return vars_; }

  const Polynomial& at(std::span<const int> idx) const {
    return components_[flat(idx)];
  }
  const Polynomial& at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  void set(std::span<const int> idx, Polynomial value) {
    components_[flat(idx)] = std::move(value);
  }
  void set(std::initializer_list<int> idx, Polynomial value) {
    set(std::span<const int>(idx.begin(), idx.size()), std::move(value));
  }

  /// In-place accumulation; keeps hot loops free of temporaries.
  void add_at(std::span<const int> idx, const Polynomial& value) {
    components_[flat(idx)] += value;
  }
  void add_at(std::initializer_list<int> idx, const Polynomial& value) {
    add_at(std::span<const int>(idx.begin(), idx.size()), value);
  }

  bool is_zero() const {
    for (const Polynomial& p : components_)
      if (!p.is_zero()) return false;
    return true;
  }

  /// First (row-major) index holding a nonzero component, if any. 0-based.
  std::optional<std::vector<int>> first_nonzero() const {
    std::vector<int> idx(static_cast<std::size_t>(rank()), 0);
    for (std::size_t f = 0; f < components_.size(); ++f) {
      if (!components_[f].is_zero()) {
        std::size_t rem = f;
        for (int s = rank() - 1; s >= 0; --s) {
          idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(dim_));
          rem /= static_cast<std::size_t>(dim_);
        }
        return idx;
      }
    }
    return std::nullopt;
  }

  Tensor operator-() const {
    Tensor r = *this;
    for (Polynomial& p : r.components_) p = -p;
    return r;
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

  friend Tensor operator*(const Tensor& t, const Rational& c) {
    Tensor r = t;
    for (Polynomial& p : r.components_) p *= c;
    return r;
  }
  friend Tensor operator*(const Rational& c, const Tensor& t) { return t * c; }
  friend Tensor operator*(const Tensor& t, const Polynomial& c) {
    Tensor r = t;
    for (Polynomial& p : r.components_) p *= c;
    return r;
  }
  friend Tensor operator*(const Polynomial& c, const Tensor& t) { return t * c; }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim_ == b.dim_ && a.variance_ == b.variance_ && a.vars_ == b.vars_ &&
           a.components_ == b.components_;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  /// First index at which the two tensors differ (0-based), if any.
  static std::optional<std::vector<int>> first_difference(const Tensor& a, const Tensor& b) {
    a.require_same_shape(b);
    return (a - b).first_nonzero();
  }

  /// Exact evaluation of every component; the result is a tensor of constants
  /// over the empty variable list.
  Tensor substitute(const std::map<std::string, Rational>& assignment) const {
    Tensor r(dim_, variance_, {});
    for (std::size_t i = 0; i < components_.size(); ++i)
      r.components_[i] = Polynomial::constant(components_[i].substitute(assignment));
    return r;
  }

  /// Row-major multi-index iteration: fills `idx` with zeros, then `advance`
  /// steps through all dim^rank tuples.
  std::vector<int> start_index() const {
    return std::vector<int>(static_cast<std::size_t>(rank()), 0);
  }
  bool advance(std::vector<int>& idx) const {
    for (int s = rank() - 1; s >= 0; --s) {
      auto& v = idx[static_cast<std::size_t>(s)];
      if (++v < dim_) return true;
      v = 0;
    }
    return false;
  }

private:
  std::size_t flat(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
      throw StructuralError("index of rank " + std::to_string(idx.size()) +
                            " into tensor of rank " + std::to_string(rank()));
    std::size_t f = 0;
    for (int v : idx) {
      if (v < 0 || v >= dim_)
        throw StructuralError("index component " + std::to_string(v) + " out of range");
      f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v);
    }
    return f;
  }

  void require_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_ || variance_ != o.variance_ || vars_ != o.vars_)
      throw StructuralError("tensor shape mismatch: " + to_string(variance_) + " vs " +
                            to_string(o.variance_));
  }

  int dim_;
  Variance variance_;
  VariableList vars_;
  std::vector<Polynomial> components_;
};

/// Contracts one up slot against one down slot; the rank drops by two.
inline Tensor contract(const Tensor& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a < 0 || slot_a >= r || slot_b < 0 || slot_b >= r || slot_a == slot_b)
    throw StructuralError("contraction slots out of range or equal");
  if (t.variance()[static_cast<std::size_t>(slot_a)] ==
      t.variance()[static_cast<std::size_t>(slot_b)])
    throw StructuralError("contraction requires one up and one down slot");

  const int lo = std::min(slot_a, slot_b);
  const int hi = std::max(slot_a, slot_b);
  Variance out_var;
  for (int s = 0; s < r; ++s)
    if (s != lo && s != hi) out_var.push_back(t.variance()[static_cast<std::size_t>(s)]);

  Tensor out(t.dim(), out_var, t.vars());
  std::vector<int> oidx = out.start_index();
  std::vector<int> src(static_cast<std::size_t>(r), 0);
  do {
    Polynomial sum(t.vars());
    for (int k = 0; k < t.dim(); ++k) {
      int o = 0;
      for (int s = 0; s < r; ++s) {
        if (s == lo || s == hi)
          src[static_cast<std::size_t>(s)] = k;
        else
          src[static_cast<std::size_t>(s)] = oidx[static_cast<std::size_t>(o++)];
      }
      sum += t.at(src);
    }
    out.set(oidx, std::move(sum));
  } while (out.advance(oidx));
  return out;
}

/// The value of a rank-0 tensor.
inline Polynomial scalar_value(const Tensor& t) {
  if (t.rank() != 0) throw StructuralError("tensor is not a scalar");
  return t.at(std::span<const int>{});
}

/// Exact inverse of a symmetric (0,2) metric with parameter-free rational
/// entries, as a (2,0) tensor.
inline Tensor metric_inverse(const Tensor& g) {
  if (g.variance() != Variance{Slot::Down, Slot::Down})
    throw StructuralError("metric must be a (0,2) tensor");
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (g.at({i, j}) != g.at({j, i}))
        throw StructuralError("metric is not symmetric");

  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n)),
      inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    inv[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), Rational(0));
    inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    for (int j = 0; j < n; ++j) {
      const Polynomial& e = g.at({i, j});
      if (!e.is_constant())
        throw UnsupportedMetricError("metric entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) +
                                     ") depends on parameters: " + e.to_string());
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e.constant_value();
    }
  }

  // Gauss-Jordan with exact pivoting.
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw DegenerateMetricError("metric has zero determinant");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
    const Rational p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= p;
      inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= p;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Rational f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
  }

  Tensor out(n, {Slot::Up, Slot::Up}, g.vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.set({i, j},
              Polynomial::constant(inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                   g.vars()));
  return out;
}

/// A metric together with its exact inverse.
struct MetricPair {
  Tensor g;
  Tensor g_inv;

  static MetricPair make(const Tensor& metric) {
    return MetricPair{metric, metric_inverse(metric)};
  }
  int dim() const { return g.dim(); }
};

namespace detail {

inline Tensor flip_slot_with(const Tensor& t, int slot, const Tensor& metric, Slot required,
                             Slot produced) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw StructuralError("slot out of range");
  if (t.variance()[static_cast<std::size_t>(slot)] != required)
    throw StructuralError(std::string("slot has wrong variance for ") +
                          (required == Slot::Up ? "lowering" : "raising"));
  Variance var = t.variance();
  var[static_cast<std::size_t>(slot)] = produced;
  Tensor out(t.dim(), var, t.vars());
  std::vector<int> idx = out.start_index();
  std::vector<int> src = idx;
  do {
    Polynomial sum(t.vars());
    src = idx;
    for (int k = 0; k < t.dim(); ++k) {
      src[static_cast<std::size_t>(slot)] = k;
      sum += t.at(src) * metric.at({k, idx[static_cast<std::size_t>(slot)]});
    }
    out.set(idx, std::move(sum));
  } while (out.advance(idx));
  return out;
}

}  // namespace detail

/// Lowers the given up slot with the metric: T'_{..i..} = T_{..k..} g_{ki}.
inline Tensor lower_index(const Tensor& t, int slot, const MetricPair& m) {
  return detail::flip_slot_with(t, slot, m.g, Slot::Up, Slot::Down);
}

/// Raises the given down slot with the inverse metric.
inline Tensor raise_index(const Tensor& t, int slot, const MetricPair& m) {
  return detail::flip_slot_with(t, slot, m.g_inv, Slot::Down, Slot::Up);
}

/// Traces two same-variance slots against the metric, e.g.
/// g^{ij} T_{..i..j..} for two down slots.
inline Tensor metric_trace(const Tensor& t, int slot_a, int slot_b, const MetricPair& m) {
  if (slot_a == slot_b) throw StructuralError("trace slots must differ");
  const Slot va = t.variance()[static_cast<std::size_t>(slot_a)];
  const Slot vb = t.variance()[static_cast<std::size_t>(slot_b)];
  if (va != vb) return contract(t, slot_a, slot_b);
  const Tensor flipped = (va == Slot::Down) ? raise_index(t, slot_a, m)
                                            : lower_index(t, slot_a, m);
  return contract(flipped, slot_a, slot_b);
}

/// Rearranges arguments: result(x_0,...,x_{r-1}) = t(x_{arg_of_slot[0]}, ...).
inline Tensor permute(const Tensor& t, std::span<const int> arg_of_slot) {
  const int r = t.rank();
  if (static_cast<int>(arg_of_slot.size()) != r)
    throw StructuralError("permutation length differs from tensor rank");
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int v : arg_of_slot) {
    if (v < 0 || v >= r || seen[static_cast<std::size_t>(v)])
      throw StructuralError("invalid slot permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  Variance var(static_cast<std::size_t>(r));
  for (int s = 0; s < r; ++s)
    var[static_cast<std::size_t>(arg_of_slot[static_cast<std::size_t>(s)])] =
        t.variance()[static_cast<std::size_t>(s)];
  Tensor out(t.dim(), var, t.vars());
  std::vector<int> src = t.start_index();
  std::vector<int> dst(static_cast<std::size_t>(r), 0);
  if (r == 0) {
    out.set(dst, t.at(src));
    return out;
  }
  do {
    for (int s = 0; s < r; ++s)
      dst[static_cast<std::size_t>(arg_of_slot[static_cast<std::size_t>(s)])] =
          src[static_cast<std::size_t>(s)];
    out.set(dst, t.at(src));
  } while (t.advance(src));
  return out;
}

inline Tensor permute(const Tensor& t, std::initializer_list<int> arg_of_slot) {
  return permute(t, std::span<const int>(arg_of_slot.begin(), arg_of_slot.size()));
}

/// Inserts an endomorphism (a (1,1) tensor stored argument-first) at a slot:
/// on a down slot the argument is pre-composed, T'(.., x, ..) = T(.., Jx, ..);
/// on an up slot the output is post-composed, T' = J applied to T's output.
inline Tensor compose_with(const Tensor& t, int slot, const Tensor& endo) {
  if (endo.variance() != Variance{Slot::Down, Slot::Up} || endo.dim() != t.dim())
    throw StructuralError("endomorphism must be a (1,1) tensor over the same frame");
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw StructuralError("slot out of range");
  const bool down = t.variance()[static_cast<std::size_t>(slot)] == Slot::Down;
  Tensor out(t.dim(), t.variance(), t.vars());
  std::vector<int> idx = out.start_index();
  std::vector<int> src = idx;
  do {
    Polynomial sum(t.vars());
    src = idx;
    for (int k = 0; k < t.dim(); ++k) {
      src[static_cast<std::size_t>(slot)] = k;
      // down: T_{..k..} J^k_i ; up: J^m_k T^{..k..} with m the result index.
      const Polynomial& j = down ? endo.at({idx[static_cast<std::size_t>(slot)], k})
                                 : endo.at({k, idx[static_cast<std::size_t>(slot)]});
      sum += t.at(src) * j;
    }
    out.set(idx, std::move(sum));
  } while (out.advance(idx));
  return out;
}

}  // namespace norden
