#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace qsh {

// Small exact rational used for the formal part of exponents (coefficients of
// adjoined exponent symbols).  These coefficients stay tiny in practice, so a
// machine-word fraction is enough; operations go through 128-bit intermediates
// and throw on overflow rather than silently wrapping.
struct Rat64 {
  int64_t n = 0;
  int64_t d = 1;

  Rat64() = default;
  Rat64(int64_t num) : n(num), d(1) {}
  Rat64(int64_t num, int64_t den) : n(num), d(den) { normalize(); }

  void normalize() {
    if (d == 0) throw std::runtime_error("Rat64: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    if (n == 0) { d = 1; return; }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    n /= g; d /= g;
  }

  bool isZero() const { return n == 0; }
  bool isInt() const { return d == 1; }

  friend Rat64 operator+(const Rat64& a, const Rat64& b) {
    __int128 num = (__int128)a.n * b.d + (__int128)b.n * a.d;
    __int128 den = (__int128)a.d * b.d;
    return fromWide(num, den);
  }
  friend Rat64 operator-(const Rat64& a, const Rat64& b) {
    __int128 num = (__int128)a.n * b.d - (__int128)b.n * a.d;
    __int128 den = (__int128)a.d * b.d;
    return fromWide(num, den);
  }
  friend Rat64 operator*(const Rat64& a, const Rat64& b) {
    return fromWide((__int128)a.n * b.n, (__int128)a.d * b.d);
  }
  Rat64 operator-() const { Rat64 r; r.n = -n; r.d = d; return r; }

  friend bool operator==(const Rat64& a, const Rat64& b) {
    return a.n == b.n && a.d == b.d;
  }
  friend bool operator!=(const Rat64& a, const Rat64& b) { return !(a == b); }
  // exact comparison via cross multiplication
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return (__int128)a.n * b.d < (__int128)b.n * a.d;
  }

  static Rat64 fromWide(__int128 num, __int128 den) {
    if (den < 0) { num = -num; den = -den; }
    __int128 g = wideGcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::runtime_error("Rat64 overflow");
    Rat64 r; r.n = (int64_t)num; r.d = (int64_t)den;
    if (r.n == 0) r.d = 1;
    return r;
  }

private:
  static __int128 wideGcd(__int128 a, __int128 b) {
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
};

}  // namespace qsh
