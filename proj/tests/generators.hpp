#pragma once

// Hand-rolled generators for the property tests. Every suite seeds its own
// engine so failures reproduce from the printed case alone.

#include "mahler/cyclo.hpp"
#include "mahler/poly.hpp"
#include "mahler/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

// Noncyclotomic-looking cofactor: exact degree in [1, deg_max], coefficients
// in [-height, height], nonzero constant and leading terms.
inline mahler::IntPoly poly(Rng& r, int deg_max, int height) {
  const int d = uniform(r, 1, deg_max);
  std::vector<mahler::BigInt> c(static_cast<std::size_t>(d + 1));
  for (auto& v : c) v = uniform(r, -height, height);
  auto nonzero = [&] { int v = uniform(r, 1, height); return uniform(r, 0, 1) ? v : -v; };
  c[0] = nonzero();
  c[static_cast<std::size_t>(d)] = nonzero();
  return mahler::IntPoly(std::move(c));
}

// Rational in (0, 1) with denominator in [2, q_max].
inline mahler::Rational unit_rational(Rng& r, int q_max) {
  const int q = uniform(r, 2, q_max);
  return mahler::Rational(uniform(r, 1, q - 1), q);
}

// Rational in [0, 1) with denominator in [1, q_max].
inline mahler::Rational unit_rational0(Rng& r, int q_max) {
  const int q = uniform(r, 1, q_max);
  return mahler::Rational(uniform(r, 0, q - 1), q);
}

// Product of (x^d - 1)^{e_d} with nonnegative expansion and total degree
// at most deg_max.
inline mahler::CycloProduct cyclo_product(Rng& r, int deg_max) {
  for (;;) {
    mahler::CycloProduct C;
    int degree = 0;
    const int terms = uniform(r, 1, 3);
    for (int t = 0; t < terms; ++t) {
      const int d = uniform(r, 1, 12);
      const int e = uniform(r, -1, 2);
      if (e == 0) continue;
      C.add(d, e);
      degree += d * e;
    }
    if (C.exponents().empty() || degree < 1 || degree > deg_max) continue;
    try {
      mahler::require_polynomial(C);
    } catch (const mahler::NegativeMultiplicity&) {
      continue;
    }
    return C;
  }
}

}  // namespace gen
