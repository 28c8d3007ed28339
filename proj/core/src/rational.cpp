#include "bhlab/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bhlab {
namespace {

__extension__ typedef __int128 Wide;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < -kMax || den > kMax)
    throw std::overflow_error("rational arithmetic overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::optional<Wide> parse_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Wide v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > kMax) return std::nullopt;
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const Wide g = gcd_wide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("rational arithmetic overflow");
  num_ = static_cast<std::int64_t>(n);
  den_ = static_cast<std::int64_t>(d);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Wide num = 0, den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = parse_digits(text.substr(0, slash));
    auto d = parse_digits(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    num = *n;
    den = *d;
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (frac.size() > 18) return std::nullopt;
    auto w = whole.empty() ? std::optional<Wide>(0) : parse_digits(whole);
    auto f = frac.empty() ? std::optional<Wide>(0) : parse_digits(frac);
    if (!w || !f) return std::nullopt;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = *w * den + *f;
    if (num > kMax) return std::nullopt;
  } else {
    auto n = parse_digits(text);
    if (!n) return std::nullopt;
    num = *n;
  }
  try {
    return make(negative ? -num : num, den);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

Rational Rational::reciprocal() const { return make(den_, num_); }

Rational operator+(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace bhlab
