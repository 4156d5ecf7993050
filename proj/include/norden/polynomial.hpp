#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "norden/errors.hpp"
#include "norden/rational.hpp"

namespace norden {

using VariableList = std::vector<std::string>;
using Exponents = std::vector<unsigned>;

/// Graded-lexicographic term order, highest term first: total degree, then
/// exponents left to right. Fixed so canonical forms are reproducible.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse multivariate polynomial over exact rationals in a fixed, ordered
/// list of parameter names. Stored in canonical form: no zero coefficients,
/// terms ordered graded-lexicographically, so equality is structural and
/// zero-testing is an emptiness check.
class Polynomial {
public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(VariableList vars) : vars_(std::move(vars)) {}

  static Polynomial constant(const Rational& c, VariableList vars = {}) {
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_[Exponents(p.vars_.size(), 0u)] = c;
    return p;
  }

  static Polynomial variable(const std::string& name, VariableList vars) {
    Polynomial p(std::move(vars));
    const auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
    if (it == p.vars_.end())
      throw StructuralError("unknown parameter '" + name + "'");
    Exponents e(p.vars_.size(), 0u);
    e[static_cast<std::size_t>(it - p.vars_.begin())] = 1u;
    p.terms_[std::move(e)] = Rational(1);
    return p;
  }

  const VariableList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
  }

  /// The value of a constant polynomial; anything else is a structural error.
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant())
      throw StructuralError("polynomial '" + to_string() + "' is not constant");
    return terms_.begin()->second;
  }

  unsigned total_degree() const {
    if (terms_.empty()) return 0;
    const Exponents& lead = terms_.begin()->first;
    return std::accumulate(lead.begin(), lead.end(), 0u);
  }

  Rational leading_coefficient() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  Polynomial operator-() const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) {
      auto [it, inserted] = terms_.emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_vars(b);
    Polynomial r(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto [it, inserted] = r.terms_.emplace(std::move(e), ca * cb);
        if (!inserted) {
          it->second += ca * cb;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator*(const Polynomial& p, const Rational& c) {
    Polynomial r(p.vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, coef] : p.terms_) r.terms_[e] = coef * c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }
  Polynomial& operator*=(const Rational& c) { return *this = *this * c; }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(Rational(1), vars_);
    for (unsigned i = 0; i < e; ++i) result *= *this;
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Exact evaluation. Every variable that actually appears must be assigned.
  Rational substitute(const std::map<std::string, Rational>& assignment) const {
    Rational result(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const auto it = assignment.find(vars_[i]);
        if (it == assignment.end())
          throw StructuralError("no value assigned to parameter '" + vars_[i] + "'");
        term *= it->second.pow(e[i]);
      }
      result += term;
    }
    return result;
  }

  /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
  Rational content() const {
    Rational g(0);
    for (const auto& [e, c] : terms_) g = Rational::gcd(g, c);
    return g;
  }

  /// Divides out the content and flips the sign so the leading coefficient is
  /// positive. Used to report defining conditions in a normal form.
  Polynomial primitive_normalized() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (leading_coefficient().sign() < 0) c = -c;
    Polynomial r(vars_);
    for (const auto& [e, coef] : terms_) r.terms_[e] = coef / c;
    return r;
  }

  /// Text form: terms joined with " + ", each `coef*name^exp*...` with the
  /// coefficient as signed `p/q` integers, e.g. "16*l1^2 + -16*l3^2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      std::string monomial;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!monomial.empty()) monomial += '*';
        monomial += vars_[i];
        if (e[i] > 1) {
          monomial += '^';
          monomial += std::to_string(e[i]);
        }
      }
      if (monomial.empty()) {
        out += c.to_string();
      } else if (c.is_one()) {
        out += monomial;
      } else if ((-c).is_one()) {
        out += '-';
        out += monomial;
      } else {
        out += c.to_string();
        out += '*';
        out += monomial;
      }
    }
    return out;
  }

private:
  void require_same_vars(const Polynomial& o) const {
    if (vars_ != o.vars_)
      throw StructuralError("polynomials over different variable lists");
  }

  VariableList vars_;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

/// Total order on polynomials over one variable list: leading terms first
/// (higher monomial in the graded-lexicographic order sorts earlier), ties
/// broken by coefficients, then by term count.
inline bool polynomial_order_less(const Polynomial& a, const Polynomial& b) {
  const GradedLexGreater monomial_greater;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return monomial_greater(ia->first, ib->first);
    if (ia->second != ib->second) return ib->second < ia->second;
  }
  return ia != a.terms().end();
}

namespace detail {

/// Recursive-descent parser for the polynomial text form.
///
///   poly   := ws [sign] term (ws ('+'|'-') ws term)* ws
///   term   := ['+'|'-'] factor (ws '*' ws factor)*
///   factor := rational | name ('^' uint)?
class PolynomialParser {
public:
  PolynomialParser(std::string_view text, const VariableList& vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial result = parse_signed_term(true);
    skip_ws();
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const bool minus = text_[pos_] == '-';
      ++pos_;
      Polynomial term = parse_signed_term(false);
      result += minus ? -term : term;
      skip_ws();
    }
    if (pos_ != text_.size())
      throw ParseError("unexpected character '" + std::string(1, text_[pos_]) +
                           "' in polynomial",
                       pos_);
    return result;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  Polynomial parse_signed_term(bool allow_leading_sign) {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      // A sign directly in front of a name, or the optional leading sign.
      if (allow_leading_sign || pos_ + 1 >= text_.size() || !is_digit(text_[pos_ + 1])) {
        negative = text_[pos_] == '-';
        ++pos_;
        skip_ws();
      }
    }
    Polynomial term = parse_factor();
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      skip_ws();
      term *= parse_factor();
      skip_ws();
    }
    return negative ? -term : term;
  }

  Polynomial parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of polynomial", pos_);
    const char c = text_[pos_];
    if (is_digit(c) || c == '+' || c == '-') {
      Rational r = Rational::parse_prefix(text_, pos_);
      return Polynomial::constant(r, vars_);
    }
    if (!is_name_start(c))
      throw ParseError("expected a number or parameter name", pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    Polynomial factor = Polynomial::variable(name, vars_);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      const std::size_t dstart = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (pos_ == dstart) throw ParseError("expected exponent digits", pos_);
      const unsigned long e = std::stoul(std::string(text_.substr(dstart, pos_ - dstart)));
      factor = factor.pow(static_cast<unsigned>(e));
    }
    return factor;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_name_char(char c) { return is_name_start(c) || is_digit(c); }

  std::string_view text_;
  const VariableList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const VariableList& vars) {
  return detail::PolynomialParser(text, vars).parse();
}

}  // namespace norden
