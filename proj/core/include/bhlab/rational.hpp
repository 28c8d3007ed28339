#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bhlab {

/// Normalized fraction num/den with den > 0 and gcd(num, den) = 1.
///
/// Arithmetic is checked: any result that does not fit in 64-bit numerator
/// and denominator throws std::overflow_error. Exponent code uses this to keep
/// boundary cases such as 2m/(m+1) exact and falls back to doubles when a
/// computation overflows.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  /// Accepts "a/b", integers and plain decimals ("1.8", "-0.25"). Returns
  /// nullopt for anything else, including exponent notation.
  static std::optional<Rational> parse(std::string_view text);

  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace bhlab
