#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ngeo {

/// Base class for every error raised by a violated mathematical precondition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by design of arithmetic
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const BigInt& value) : value_(value) {}

  /// Parses "p", "-p" or "p/q". Throws DomainError on malformed input or q == 0.
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_integer() const;
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }

  /// Largest integer <= this.
  Rational floor() const;
  /// Smallest integer >= this.
  Rational ceil() const;

  /// Exact conversion; throws DomainError if not an integer or out of range.
  std::int64_t to_int64() const;

  /// "p/q" in lowest terms, or "p" when integral.
  std::string str() const;

  Rational operator-() const { return Rational(Rep(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  using Rep = boost::multiprecision::cpp_rational;
  explicit Rational(Rep value) : value_(std::move(value)) {}

  Rep value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace ngeo
