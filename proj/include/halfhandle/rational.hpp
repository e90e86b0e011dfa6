#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "halfhandle/error.hpp"

namespace hh {

// Exact rational on 64-bit components with 128-bit intermediates.
// Critical values and level windows are compared exactly; floats would
// corrupt the order checks the scheduling relies on.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  static Rational parse(std::string_view text);
  std::string str() const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorCode::RangeError, "division by zero rational");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d == 0) throw Error(ErrorCode::RangeError, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw Error(ErrorCode::Overflow, "rational overflows 64-bit storage");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  void normalize() { *this = from128(num_, den_); }

  long long num_ = 0;
  long long den_ = 1;
};

// Accepts plain decimals ("0.45", "-3", "1.") and fractions ("3/14").
inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw Error(ErrorCode::Parse, "bad rational literal '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') { neg = text[pos] == '-'; ++pos; }
  if (pos >= text.size()) fail();

  auto digits = [&](i128& acc, int* count) {
    int n = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      acc = acc * 10 + (text[pos] - '0');
      if (acc > (i128(INT64_MAX) * 1000000)) throw Error(ErrorCode::Parse, "rational literal too long");
      ++pos; ++n;
    }
    if (count) *count = n;
    return n;
  };

  i128 intpart = 0;
  int nint = 0;
  digits(intpart, &nint);

  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (nint == 0) fail();
    i128 den = 0;
    if (digits(den, nullptr) == 0 || pos != text.size()) fail();
    return from128(neg ? -intpart : intpart, den);
  }

  i128 frac = 0;
  int nfrac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    digits(frac, &nfrac);
  }
  if (pos != text.size() || (nint == 0 && nfrac == 0)) fail();
  if (nfrac > 18) throw Error(ErrorCode::Parse, "more than 18 fractional digits");
  i128 scale = 1;
  for (int i = 0; i < nfrac; ++i) scale *= 10;
  i128 num = intpart * scale + frac;
  return from128(neg ? -num : num, scale);
}

// Finite decimal when the denominator is 2^a 5^b, "p/q" otherwise, so
// parse(str()) is the identity on every value.
inline std::string Rational::str() const {
  long long d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int shift = twos > fives ? twos : fives;
  i128 scaled = i128(num_ < 0 ? -num_ : num_);
  // scale numerator so the denominator becomes 10^shift
  for (int i = 0; i < shift - twos; ++i) scaled *= 2;
  for (int i = 0; i < shift - fives; ++i) scaled *= 5;

  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) { digits.insert(digits.begin(), char('0' + int(scaled % 10))); scaled /= 10; }
  while (static_cast<int>(digits.size()) <= shift) digits.insert(digits.begin(), '0');

  std::string out;
  if (num_ < 0) out += '-';
  out += digits.substr(0, digits.size() - shift);
  if (shift > 0) {
    std::string frac = digits.substr(digits.size() - shift);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += '.' + frac;
  }
  return out;
}

}  // namespace hh
