#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace heurbench {

/// Exact rational number over 64-bit integers.
///
/// Always stored normalized: gcd(numer, denom) == 1 and denom > 0. All
/// derived scores and rates in the workbench are computed with this type so
/// that table values reproduce bit-exactly across runs and machines.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t numer, std::int64_t denom);

  /// Accepts "n", "n/d", and plain decimals such as "1.25".
  static Rational parse(std::string_view text);

  std::int64_t numer() const { return num_; }
  std::int64_t denom() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational &operator+=(const Rational &rhs);
  Rational &operator-=(const Rational &rhs);
  Rational &operator*=(const Rational &rhs);
  Rational &operator/=(const Rational &rhs); // throws on division by zero

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  bool operator==(const Rational &rhs) const = default;
  std::strong_ordering operator<=>(const Rational &rhs) const;

  double to_double() const;

  /// Canonical form "numer/denom", e.g. "31/24" or "3/1".
  std::string to_fraction_string() const;

  /// Fixed-point decimal, rounded half away from zero; e.g. 31/24 -> "1.2917".
  std::string to_decimal_string(int places = 4) const;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational &value);

} // namespace heurbench
