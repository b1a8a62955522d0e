#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace metaprio {

// Exact rational on int64 components, always normalized (den > 0, gcd == 1).
// Products and cross terms are taken in 128 bits; anything that cannot be
// reduced back into int64 throws instead of wrapping.
class Rational {
public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) { assign(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  Rational operator-() const { return Rational(-num_, den_); }

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

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Fixed-point decimal rendering, round half away from zero. digits == 0
  // prints no decimal point.
  std::string to_decimal(int digits) const {
    i128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    i128 n = i128(num_) * scale;
    bool neg = n < 0;
    if (neg) n = -n;
    i128 q = n / den_;
    i128 r = n % den_;
    if (2 * r >= den_) ++q;
    std::string body = u128_to_string(q);
    std::string out;
    if (digits == 0) {
      out = body;
    } else {
      while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
      out = body.substr(0, body.size() - digits) + "." + body.substr(body.size() - digits);
    }
    if (neg && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
    return out;
  }

  // Parses "123", "-4.5", "2.50" exactly.
  static Rational from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty decimal literal");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-' || text[i] == '+') {
      neg = text[i] == '-';
      ++i;
    }
    long long num = 0;
    long long den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '.') {
        if (seen_dot) throw std::invalid_argument("bad decimal literal: " + text);
        seen_dot = true;
        continue;
      }
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal literal: " + text);
      seen_digit = true;
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + text);
    return Rational(neg ? -num : num, den);
  }

private:
  using i128 = __int128;

  void assign(long long num, long long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num_ = num;
    den_ = den;
  }

  static Rational from128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  static std::string u128_to_string(i128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace metaprio
