#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "norden/frame.hpp"

namespace norden {

/// Manifold spec document. JSON object with:
///   dim      even integer >= 2
///   params   array of parameter names
///   J        dim x dim matrix of rationals, row i / column j = coefficient
///            of X_i in J X_j
///   g        dim x dim matrix of rationals
///   brackets array of {i, j, coefficients}: [X_i, X_j] = sum_k coef_k X_k,
///            1-based, i < j; omitted brackets are zero
/// Rational matrix entries may be JSON integers or strings "p/q"; bracket
/// coefficients are polynomial strings in the declared parameters.
namespace specfile {

namespace detail {

inline Rational rational_entry(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(static_cast<long long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  throw ParseError(what + ": expected an integer or a rational string");
}

inline Tensor matrix_tensor(const nlohmann::json& rows, int dim, const VariableList& vars,
                            const Variance& variance, bool transpose,
                            const std::string& what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw ParseError(what + ": expected " + std::to_string(dim) + " rows");
  Tensor t(dim, variance, vars);
  for (int i = 0; i < dim; ++i) {
    const nlohmann::json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(what + ": row " + std::to_string(i + 1) + " must have " +
                       std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) {
      const Rational value = rational_entry(
          row[static_cast<std::size_t>(j)],
          what + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
      // Matrix rows are outputs; the J tensor stores the argument slot first.
      if (transpose)
        t.set({j, i}, Polynomial::constant(value, vars));
      else
        t.set({i, j}, Polynomial::constant(value, vars));
    }
  }
  return t;
}

}  // namespace detail

/// Parses the document without validating the resulting spec.
inline FrameSpec parse_unvalidated(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("spec file: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("spec file: top level must be an object");

  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("spec file: missing integer field 'dim'");
  const int dim = doc["dim"].get<int>();
  if (dim % 2 != 0 || dim < 2)
    throw ParseError("spec file: dimension must be even and at least 2");

  VariableList params;
  if (doc.contains("params")) {
    if (!doc["params"].is_array()) throw ParseError("spec file: 'params' must be an array");
    for (const auto& p : doc["params"]) {
      if (!p.is_string()) throw ParseError("spec file: parameter names must be strings");
      params.push_back(p.get<std::string>());
    }
  }

  if (!doc.contains("J") || !doc.contains("g"))
    throw ParseError("spec file: missing 'J' or 'g' matrix");
  const Tensor J =
      detail::matrix_tensor(doc["J"], dim, params, {Slot::Down, Slot::Up}, true, "J");
  const Tensor g =
      detail::matrix_tensor(doc["g"], dim, params, {Slot::Down, Slot::Down}, false, "g");

  Tensor c(dim, {Slot::Down, Slot::Down, Slot::Up}, params);
  if (doc.contains("brackets")) {
    if (!doc["brackets"].is_array())
      throw ParseError("spec file: 'brackets' must be an array");
    for (const auto& entry : doc["brackets"]) {
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
          !entry.contains("coefficients"))
        throw ParseError("spec file: each bracket needs 'i', 'j', 'coefficients'");
      const int i = entry["i"].get<int>();
      const int j = entry["j"].get<int>();
      if (i < 1 || j < 1 || i > dim || j > dim)
        throw ParseError("spec file: bracket indices must lie in 1.." + std::to_string(dim));
      if (i >= j)
        throw ParseError("spec file: brackets are stored with i < j, got [" +
                         std::to_string(i) + "," + std::to_string(j) + "]");
      const auto& coefs = entry["coefficients"];
      if (!coefs.is_array() || static_cast<int>(coefs.size()) != dim)
        throw ParseError("spec file: bracket [" + std::to_string(i) + "," +
                         std::to_string(j) + "] needs " + std::to_string(dim) +
                         " coefficients");
      for (int k = 0; k < dim; ++k) {
        const auto& ck = coefs[static_cast<std::size_t>(k)];
        if (!ck.is_string())
          throw ParseError("spec file: bracket coefficients must be polynomial strings");
        Polynomial p = parse_polynomial(ck.get<std::string>(), params);
        c.set({i - 1, j - 1, k}, p);
        c.set({j - 1, i - 1, k}, -p);
      }
    }
  }

  return FrameSpec{dim, params, std::move(c), J, g};
}

/// Parses and validates; a spec failing validation throws with the named
/// condition and index tuple.
inline FrameSpec parse(const std::string& text) {
  FrameSpec spec = parse_unvalidated(text);
  require_valid(spec);
  return spec;
}

/// Canonical emission; parse(emit(spec)) reproduces the spec exactly.
inline std::string emit(const FrameSpec& spec) {
  nlohmann::ordered_json doc;
  doc["dim"] = spec.dim;
  doc["params"] = spec.params;

  nlohmann::ordered_json jm = nlohmann::ordered_json::array();
  nlohmann::ordered_json gm = nlohmann::ordered_json::array();
  for (int i = 0; i < spec.dim; ++i) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    nlohmann::ordered_json grow = nlohmann::ordered_json::array();
    for (int j = 0; j < spec.dim; ++j) {
      jrow.push_back(spec.J.at({j, i}).constant_value().to_string());
      grow.push_back(spec.g.at({i, j}).constant_value().to_string());
    }
    jm.push_back(std::move(jrow));
    gm.push_back(std::move(grow));
  }
  doc["J"] = std::move(jm);
  doc["g"] = std::move(gm);

  nlohmann::ordered_json brackets = nlohmann::ordered_json::array();
  for (int i = 0; i < spec.dim; ++i)
    for (int j = i + 1; j < spec.dim; ++j) {
      bool nonzero = false;
      for (int k = 0; k < spec.dim; ++k)
        if (!spec.c.at({i, j, k}).is_zero()) nonzero = true;
      if (!nonzero) continue;
      nlohmann::ordered_json entry;
      entry["i"] = i + 1;
      entry["j"] = j + 1;
      nlohmann::ordered_json coefs = nlohmann::ordered_json::array();
      for (int k = 0; k < spec.dim; ++k) coefs.push_back(spec.c.at({i, j, k}).to_string());
      entry["coefficients"] = std::move(coefs);
      brackets.push_back(std::move(entry));
    }
  doc["brackets"] = std::move(brackets);

  return doc.dump(2) + "\n";
}

}  // namespace specfile

/// The built-in 4-dimensional example: a Lie group with an abelian complex
/// structure and a neutral metric, with the two independent brackets
///   [X1,X4] = [X2,X3] = l1 X1 + l2 X2 + l3 X3 + l4 X4
///   [X1,X3] = [X4,X2] = l2 X1 - l1 X2 + l4 X3 - l3 X4
/// over the four parameters l1..l4.
inline FrameSpec builtin_example() {
  const VariableList params{"l1", "l2", "l3", "l4"};
  const int dim = 4;

  Tensor J(dim, {Slot::Down, Slot::Up}, params);
  const auto one = [&params](int sign) {
    return Polynomial::constant(Rational(sign), params);
  };
  // J X1 = X3, J X2 = X4, J X3 = -X1, J X4 = -X2.
  J.set({0, 2}, one(1));
  J.set({1, 3}, one(1));
  J.set({2, 0}, one(-1));
  J.set({3, 1}, one(-1));

  Tensor g(dim, {Slot::Down, Slot::Down}, params);
  g.set({0, 0}, one(1));
  g.set({1, 1}, one(1));
  g.set({2, 2}, one(-1));
  g.set({3, 3}, one(-1));

  Tensor c(dim, {Slot::Down, Slot::Down, Slot::Up}, params);
  const auto var = [&params](const char* name) {
    return Polynomial::variable(name, params);
  };
  const Polynomial l1 = var("l1"), l2 = var("l2"), l3 = var("l3"), l4 = var("l4");
  const auto set_bracket = [&c](int i, int j, const std::vector<Polynomial>& coefs) {
    for (int k = 0; k < 4; ++k) {
      c.set({i, j, k}, coefs[static_cast<std::size_t>(k)]);
      c.set({j, i, k}, -coefs[static_cast<std::size_t>(k)]);
    }
  };
  set_bracket(0, 3, {l1, l2, l3, l4});
  set_bracket(1, 2, {l1, l2, l3, l4});
  set_bracket(0, 2, {l2, -l1, l4, -l3});
  set_bracket(3, 1, {l2, -l1, l4, -l3});  // [X4,X2]; stored as [X2,X4] negated

  return FrameSpec{dim, params, std::move(c), std::move(J), std::move(g)};
}

}  // namespace norden
