#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace packlab {

// Exact rational arithmetic over 64-bit integers. Intermediates are widened
// to 128 bits and reduced results must fit back into 64 bits, otherwise the
// operation throws. All ratios in this project stay far below the limit.
class Rational {
 public:
  Rational() = default;
  Rational(long long num, long long den = 1) { *this = from128(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string fraction_str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal expansion rounded half away from zero.
  std::string decimal_str(int places = 9) const {
    i128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    i128 scaled = i128(num_ < 0 ? -num_ : num_) * scale;
    i128 digits = (scaled + den_ / 2) / den_;
    std::string frac(places, '0');
    for (int i = places - 1; i >= 0; --i) {
      frac[i] = char('0' + int(digits % 10));
      digits /= 10;
    }
    std::string out = num_ < 0 ? "-" : "";
    out += std::to_string((long long)digits);
    if (places > 0) {
      out += '.';
      out += frac;
    }
    return out;
  }

  double to_double() const { return double(num_) / double(den_); }

 private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 kMax = std::numeric_limits<long long>::max();
    constexpr i128 kMin = std::numeric_limits<long long>::min();
    if (n > kMax || n < kMin || d > kMax)
      throw std::overflow_error("rational out of 64-bit range");
    Rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace packlab
