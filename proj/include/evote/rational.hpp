#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace evote {

/// Exact arbitrary-precision rational. Always kept in canonical form
/// (reduced, positive denominator) so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Parses "p/q" or a bare integer "p". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::string numerator() const;
  std::string denominator() const;
  bool isInteger() const;

  /// Largest integer not greater than this value.
  Rational floor() const;

  /// Canonical "p/q" form; integers print with denominator 1.
  std::string toString() const;

  Rational &operator+=(const Rational &rhs);
  Rational &operator-=(const Rational &rhs);
  Rational &operator*=(const Rational &rhs);
  Rational &operator/=(const Rational &rhs);

  friend Rational operator+(Rational lhs, const Rational &rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational &rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational &rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational &rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational &lhs, const Rational &rhs);
  friend std::strong_ordering operator<=>(const Rational &lhs, const Rational &rhs);

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.toString();
  }

 private:
  explicit Rational(mpq_class value);
  mpq_class value_{0};
};

}  // namespace evote
