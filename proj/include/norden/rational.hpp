#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "norden/errors.hpp"

namespace norden {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always reduced to lowest terms with a positive
/// denominator; zero is uniquely 0/1.
class Rational {
public:
  Rational() : value_(0) {}
  Rational(int n) : value_(n) {}         // NOLINT(google-explicit-constructor)
  Rational(long long n) : value_(n) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(BigInt n) : value_(std::move(n)) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw StructuralError("rational with zero denominator");
    value_ = boost::multiprecision::cpp_rational(num);
    value_ /= boost::multiprecision::cpp_rational(den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  Rational operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
  }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw StructuralError("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(unsigned e) const {
    Rational result(1);
    Rational base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      base *= base;
      e >>= 1u;
    }
    return result;
  }

  /// Nonnegative gcd: gcd of numerators over lcm of denominators.
  static Rational gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    return Rational(BigInt(boost::multiprecision::gcd(a.numerator(), b.numerator())),
                    BigInt(boost::multiprecision::lcm(a.denominator(), b.denominator())))
        .abs();
  }

  /// "p" for integers, otherwise "p/q".
  std::string to_string() const {
    std::string s = numerator().str();
    if (!is_integer()) {
      s += '/';
      s += denominator().str();
    }
    return s;
  }

  /// Parses "p" or "p/q" with an optional leading sign. The whole string must
  /// be consumed.
  static Rational parse(std::string_view text) {
    std::size_t pos = 0;
    Rational r = parse_prefix(text, pos);
    if (pos != text.size())
      throw ParseError("trailing characters in rational '" + std::string(text) + "'", pos);
    return r;
  }

  /// Parses a rational starting at `pos`, advancing `pos` past it.
  static Rational parse_prefix(std::string_view text, std::size_t& pos) {
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    BigInt num = parse_digits(text, pos);
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      den = parse_digits(text, pos);
      if (den == 0) throw ParseError("zero denominator", pos);
    }
    Rational r(num, den);
    return negative ? -r : r;
  }

private:
  static BigInt parse_digits(std::string_view text, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw ParseError("expected digits", pos);
    return BigInt(std::string(text.substr(start, pos - start)));
  }

  boost::multiprecision::cpp_rational value_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace norden
