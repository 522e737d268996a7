#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mahler {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(p), BigInt(q));
}

inline BigInt floor_r(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline BigInt ceil_r(const Rational& q) {
  BigInt f = floor_r(q);
  return Rational(f) == q ? f : f + 1;
}

// Representative of q mod 1 in [0,1).
inline Rational frac_r(const Rational& q) { return q - Rational(floor_r(q)); }

inline Rational abs_r(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline std::int64_t to_i64(const BigInt& z) {
  if (z > BigInt(INT64_MAX) || z < BigInt(INT64_MIN))
    throw std::overflow_error("integer does not fit in 64 bits");
  return z.convert_to<std::int64_t>();
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

inline std::int64_t mod64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m (m >= 1). For m == 1 the inverse is 0.
inline std::int64_t modinv64(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod64(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1; g = a1; a1 = t;
    t = x - q * x1; x = x1; x1 = t;
  }
  if (g != 1) throw std::domain_error("modular inverse does not exist");
  return mod64(x, m);
}

}  // namespace mahler
