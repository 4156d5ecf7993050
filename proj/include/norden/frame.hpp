#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norden/tensor.hpp"

namespace norden {

/// A 2n-dimensional Lie algebra frame carrying an almost complex structure J
/// and a compatible metric g:
///   - c: structure constants, [X_i, X_j] = c^k_{ij} X_k, stored (down i,
///     down j, up k);
///   - J: (1,1), argument slot first, J X_j = J^m_j X_m stored at (j, m);
///   - g: (0,2) with parameter-free rational entries.
struct FrameSpec {
  int dim;
  VariableList params;
  Tensor c;
  Tensor J;
  Tensor g;
};

struct CheckResult {
  std::string name;
  bool passed;
  std::vector<int> where;  // first violating index tuple, 1-based; empty if none
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<CheckResult> notes;  // informational, not required for validity

  bool all_passed() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::vector<int> one_based(std::vector<int> idx) {
  for (int& v : idx) ++v;
  return idx;
}

}  // namespace detail

/// The metric obtained by composing the second argument with J:
/// h(x, y) = g(x, Jy).
inline Tensor twin_of_metric(const Tensor& J, const Tensor& metric) {
  return compose_with(metric, 1, J);
}

/// The twin metric of the spec's own g.
inline Tensor twin_metric(const FrameSpec& spec) {
  return twin_of_metric(spec.J, spec.g);
}

/// Checks every structural condition on the spec and reports each one with
/// the first violating index tuple on failure. Report-style: never throws.
inline ValidationReport validate_spec(const FrameSpec& spec) {
  ValidationReport report;
  const int n = spec.dim;
  const VariableList& vars = spec.params;

  {
    CheckResult r{"dimension-even", n >= 2 && n % 2 == 0, {}, ""};
    if (!r.passed) r.detail = "dimension must be even and at least 2, got " + std::to_string(n);
    report.checks.push_back(std::move(r));
    if (!report.checks.back().passed) return report;  // nothing else is meaningful
  }

  {
    CheckResult r{"bracket-antisymmetry", true, {}, ""};
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = 0; j < n && r.passed; ++j)
        for (int k = 0; k < n && r.passed; ++k)
          if (spec.c.at({i, j, k}) != -spec.c.at({j, i, k})) {
            r.passed = false;
            r.where = detail::one_based({i, j, k});
            r.detail = "c^k_ij != -c^k_ji at this index";
          }
    report.checks.push_back(std::move(r));
  }

  {
    // [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] = 0
    CheckResult r{"jacobi-identity", true, {}, ""};
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = i + 1; j < n && r.passed; ++j)
        for (int k = j + 1; k < n && r.passed; ++k)
          for (int l = 0; l < n && r.passed; ++l) {
            Polynomial sum(vars);
            for (int m = 0; m < n; ++m) {
              sum += spec.c.at({i, j, m}) * spec.c.at({m, k, l});
              sum += spec.c.at({j, k, m}) * spec.c.at({m, i, l});
              sum += spec.c.at({k, i, m}) * spec.c.at({m, j, l});
            }
            if (!sum.is_zero()) {
              r.passed = false;
              r.where = detail::one_based({i, j, k});
              r.detail = "Jacobi identity fails for this triple: " + sum.to_string();
            }
          }
    report.checks.push_back(std::move(r));
  }

  {
    CheckResult r{"complex-structure-square", true, {}, ""};
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = 0; j < n && r.passed; ++j) {
        Polynomial sum(vars);
        for (int k = 0; k < n; ++k) sum += spec.J.at({i, k}) * spec.J.at({k, j});
        Polynomial expected =
            Polynomial::constant(i == j ? Rational(-1) : Rational(0), vars);
        if (sum != expected) {
          r.passed = false;
          r.where = detail::one_based({i, j});
          r.detail = "J^2 = -I fails at this index";
        }
      }
    report.checks.push_back(std::move(r));
  }

  {
    CheckResult r{"metric-symmetry", true, {}, ""};
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = 0; j < i && r.passed; ++j)
        if (spec.g.at({i, j}) != spec.g.at({j, i})) {
          r.passed = false;
          r.where = detail::one_based({i, j});
          r.detail = "g_ij != g_ji at this index";
        }
    report.checks.push_back(std::move(r));
  }

  bool metric_rational = true;
  {
    CheckResult r{"metric-rational-entries", true, {}, ""};
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = 0; j < n && r.passed; ++j)
        if (!spec.g.at({i, j}).is_constant()) {
          r.passed = false;
          r.where = detail::one_based({i, j});
          r.detail = "metric entries must be parameter-free rationals";
        }
    metric_rational = r.passed;
    report.checks.push_back(std::move(r));
  }

  {
    CheckResult r{"metric-nondegenerate", true, {}, ""};
    if (metric_rational) {
      try {
        metric_inverse(spec.g);
      } catch (const DegenerateMetricError&) {
        r.passed = false;
        r.detail = "metric has zero determinant";
      } catch (const Error&) {
        r.passed = false;
        r.detail = "metric could not be inverted";
      }
    } else {
      r.passed = false;
      r.detail = "skipped: metric entries are not rational";
    }
    report.checks.push_back(std::move(r));
  }

  {
    // g(Jx, Jy) = -g(x, y)
    CheckResult r{"norden-compatibility", true, {}, ""};
    const Tensor gJJ = compose_with(compose_with(spec.g, 0, spec.J), 1, spec.J);
    for (int i = 0; i < n && r.passed; ++i)
      for (int j = 0; j < n && r.passed; ++j)
        if (gJJ.at({i, j}) != -spec.g.at({i, j})) {
          r.passed = false;
          r.where = detail::one_based({i, j});
          r.detail = "g(Jx,Jy) = -g(x,y) fails at this index";
        }
    report.checks.push_back(std::move(r));
  }

  {
    // Informational: [Jx, Jy] = [x, y] (abelian complex structure).
    CheckResult r{"abelian-complex-structure", true, {}, ""};
    const Tensor cJJ = compose_with(compose_with(spec.c, 0, spec.J), 1, spec.J);
    if (auto diff = Tensor::first_difference(cJJ, spec.c)) {
      r.passed = false;
      r.where = detail::one_based(*diff);
      r.detail = "[Jx,Jy] differs from [x,y] at this index";
    }
    report.notes.push_back(std::move(r));
  }

  return report;
}

/// Throws with the first failing condition; used where a valid spec is a
/// precondition.
inline void require_valid(const FrameSpec& spec) {
  const ValidationReport report = validate_spec(spec);
  if (const CheckResult* f = report.first_failure()) {
    std::string where;
    if (!f->where.empty()) {
      where = " at (";
      for (std::size_t i = 0; i < f->where.size(); ++i) {
        if (i) where += ',';
        where += std::to_string(f->where[i]);
      }
      where += ')';
    }
    throw ValidationError("spec validation failed: " + f->name + where +
                          (f->detail.empty() ? "" : " - " + f->detail));
  }
}

/// Evaluates all structure constants at the assignment; the result has no
/// parameters left.
inline FrameSpec substitute_spec(const FrameSpec& spec,
                                 const std::map<std::string, Rational>& assignment) {
  for (const auto& [name, value] : assignment) {
    (void)value;
    if (std::find(spec.params.begin(), spec.params.end(), name) == spec.params.end())
      throw StructuralError("substitution names unknown parameter '" + name + "'");
  }
  FrameSpec out{spec.dim, {}, spec.c.substitute(assignment), spec.J.substitute(assignment),
                spec.g.substitute(assignment)};
  return out;
}

}  // namespace norden
