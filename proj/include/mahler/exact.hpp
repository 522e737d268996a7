#pragma once

#include "mahler/closed_form.hpp"
#include "mahler/cyclo.hpp"
#include "mahler/numeric.hpp"
#include "mahler/poly.hpp"
#include "mahler/rational.hpp"
#include "mahler/special.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace mahler {

// ---------------------------------------------------------------------------
// Clausen values in the constant basis

// C_3(2 pi gamma). Even functions mod q are spanned by the divisor
// indicators exactly when q is 1, 2, 3, 4 or 6, and then the value is a
// rational multiple of zeta(3).
inline ClosedFormValue c3_value(const Rational& gamma) {
  std::int64_t a, q;
  detail::reduce_turn(gamma, a, q);
  if (q == 1 || q == 2 || q == 3 || q == 4 || q == 6) {
    // cos(2 pi a n/q) only depends on e = gcd(n, q).
    auto cos_at = [](std::int64_t order) -> Rational {
      switch (order) {
        case 1: return 1;
        case 2: return -1;
        case 3: return Rational(-1, 2);
        case 4: return 0;
        default: return Rational(1, 2);
      }
    };
    Rational c = 0;
    for (std::int64_t e : divisors(q)) {
      Rational w = Rational(1) / Rational(BigInt(e) * e * e);
      for (std::int64_t p : prime_factors(q / e)) w *= Rational(1) - Rational(1) / Rational(BigInt(p) * p * p);
      c += cos_at(q / e) * w;
    }
    return ClosedFormValue::zeta3(c);
  }
  return ClosedFormValue::numeric(clausen(3, TrigKind::Cos, gamma));
}

// c pi S_2(2 pi gamma); S_2 vanishes at half turns and equals chi_-4(a) L(2,chi_-4)
// at quarter turns.
inline ClosedFormValue pi_s2_value(const Rational& c, const Rational& gamma) {
  ClosedFormValue out;
  if (c == 0) return out;
  std::int64_t a, q;
  detail::reduce_turn(gamma, a, q);
  if (q <= 2) return out;
  if (q == 4) {
    out.q_piL4 = a == 1 ? c : Rational(-c);
    return out;
  }
  out.add_residual(scale(to_double(c) * kPi, clausen(2, TrigKind::Sin, gamma)));
  return out;
}

// S_1(2 pi gamma) / pi.
inline Rational s1_coeff(const Rational& gamma) { return clausen_closed_coeff(1, TrigKind::Sin, gamma); }

// ---------------------------------------------------------------------------
// Pair measures

// m(1-x, 1-e^{2 pi i alpha} x) = (pi^2/2)(alpha^2 - alpha + 1/6).
inline ClosedFormValue m2_pair_unit(const Rational& alpha) {
  Rational a = frac_r(alpha);
  return ClosedFormValue::pi2((a * a - a + Rational(1, 6)) / 2);
}

namespace detail {

// Common denominator of the arguments when it is small enough for 64-bit
// pair arithmetic, 0 otherwise.
inline std::int64_t common_denominator(const UnitArgSet& A) {
  BigInt D = 1;
  for (auto& a : A.args()) {
    BigInt d = den(a);
    D = D / boost::multiprecision::gcd(D, d) * d;
    if (D > BigInt(1) << 31) return 0;
  }
  return to_i64(D);
}

inline BigInt to_big(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  BigInt r = BigInt(static_cast<std::uint64_t>(u >> 64)) << 64;
  r += BigInt(static_cast<std::uint64_t>(u));
  return neg ? BigInt(-r) : r;
}

inline Rational pow_r(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline std::vector<std::int64_t> scaled_numerators(const UnitArgSet& A, std::int64_t D) {
  std::vector<std::int64_t> v;
  v.reserve(A.size());
  for (auto& a : A.args()) v.push_back(to_i64(num(a) * (D / to_i64(den(a)))));
  return v;
}

}  // namespace detail

// m_2 of prod (x - e^{2 pi i alpha_j}): (pi^2/2) sum over ordered pairs of
// (d^2 - |d| + 1/6), d = alpha_j - alpha_k.
inline ClosedFormValue m2_unit_poly(const UnitArgSet& A) {
  if (A.size() == 0) throw std::domain_error("m2_unit_poly needs at least one argument");
  const auto n = static_cast<std::int64_t>(A.size());
  const std::int64_t D = detail::common_denominator(A);
  if (D) {
    auto v = detail::scaled_numerators(A, D);
    BigInt sq = 0, ab = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      __int128 s2 = 0, s1 = 0;
      for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t d = v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(k)];
        s2 += static_cast<__int128>(d) * d;
        s1 += d < 0 ? -d : d;
      }
      sq += detail::to_big(s2);
      ab += detail::to_big(s1);
    }
    Rational total = Rational(sq) / Rational(BigInt(D) * D) - Rational(ab) / Rational(BigInt(D)) + Rational(BigInt(n) * n, 6);
    return ClosedFormValue::pi2(total / 2);
  }
  Rational total = 0;
  for (auto& x : A.args())
    for (auto& y : A.args()) {
      Rational d = x - y;
      total += d * d - abs_r(d) + Rational(1, 6);
    }
  return ClosedFormValue::pi2(total / 2);
}

// m(1 - a x, 1 - b x) via the real dilogarithm.
inline SeriesValue m_pair_linear(std::complex<double> a, std::complex<double> b) {
  const double ra = std::abs(a), rb = std::abs(b);
  if (ra < rb) std::swap(a, b);
  const double big = std::max(ra, rb), small = std::min(ra, rb);
  if (big <= 1.0) return scale(0.5, re_li2(a * std::conj(b)));
  if (small <= 1.0) return scale(0.5, re_li2(b / std::conj(a)));
  SeriesValue v = scale(0.5, re_li2(1.0 / (std::conj(a) * b)));
  double l = std::log(ra) * std::log(rb);
  return {v.value + l, v.err + 4.0 * kEps * (std::abs(l) + std::abs(v.value)), v.terms_used};
}

// sum_{0<=j<a, 0<=k<b} |k/b - j/a| for coprime a, b.
inline Rational s_ab(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw std::domain_error("s_ab needs positive arguments");
  if (std::gcd(a, b) != 1) throw std::domain_error("s_ab needs coprime arguments");
  BigInt A = a, B = b;
  return Rational(2 * A * A * B * B - 3 * A * B + A * A + B * B - 1) / Rational(6 * A * B);
}

inline Rational s_ab_bruteforce(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw std::domain_error("s_ab needs positive arguments");
  // |k/b - j/a| = |k a - j b| / (a b)
  BigInt s = 0;
  for (std::int64_t j = 0; j < a; ++j)
    for (std::int64_t k = 0; k < b; ++k) s += std::abs(k * a - j * b);
  return Rational(s) / Rational(BigInt(a) * b);
}

// m(x^a - 1, x^b - 1) = (pi^2/12) (a,b)^2 / (a b).
inline ClosedFormValue m2_pair_xn(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw std::domain_error("m2_pair_xn needs positive exponents");
  std::int64_t g = std::gcd(a, b);
  return ClosedFormValue::pi2(Rational(BigInt(g) * g) / Rational(12 * BigInt(a) * b));
}

// m(phi_m, phi_n) by the Moebius double sum over divisors.
inline ClosedFormValue m2_pair_cyclo(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw std::domain_error("m2_pair_cyclo needs positive indices");
  Rational s = 0;
  auto dm = divisors(m), dn = divisors(n);
  for (std::int64_t d1 : dm) {
    int mu1 = mobius(m / d1);
    if (!mu1) continue;
    for (std::int64_t d2 : dn) {
      int mu2 = mobius(n / d2);
      if (!mu2) continue;
      std::int64_t g = std::gcd(d1, d2);
      s += Rational(mu1 * mu2) * Rational(BigInt(g) * g) / Rational(BigInt(d1) * d2);
    }
  }
  return ClosedFormValue::pi2(s / 12);
}

enum class PrimeFactorMode { Corrected, Uncorrected };

// Factor f with m(phi_{p^k m'}, phi_{p^l n'}) = f m(phi_{m'}, phi_{n'}), p not
// dividing m'n'.
inline Rational prime_power_factor(std::int64_t p, int k, int l, PrimeFactorMode mode = PrimeFactorMode::Corrected) {
  if (k < 0 || l < 0) throw std::domain_error("prime power exponents must be nonnegative");
  if (k < l) std::swap(k, l);
  const Rational P(p);
  const Rational one_minus = Rational(1) - Rational(1) / P;
  if (k == 0) return 1;
  if (l == 0) return -one_minus / detail::pow_r(P, k - 1);
  if (k == l) return 2 * one_minus;
  if (mode == PrimeFactorMode::Uncorrected) return 2 * one_minus / detail::pow_r(P, k - l);
  return -Rational((p - 1) * (p - 1)) / detail::pow_r(P, k - l + 1);
}

inline ClosedFormValue prime_power_transform(std::int64_t p, int k, int l, const ClosedFormValue& base,
                                             PrimeFactorMode mode = PrimeFactorMode::Corrected) {
  if (p < 2 || prime_factors(p).size() != 1 || prime_factors(p)[0] != p) throw std::domain_error("p must be prime");
  if (k < 1) throw std::domain_error("prime_power_transform needs k >= 1");
  return prime_power_factor(p, k, l, mode) * base;
}

namespace detail {

inline std::map<std::int64_t, int> valuations(std::int64_t n) {
  std::map<std::int64_t, int> v;
  for (std::int64_t p : prime_factors(n)) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    v[p] = e;
  }
  return v;
}

}  // namespace detail

// Product over primes of the per-prime factors, times m_2(x-1).
inline ClosedFormValue m2_pair_cyclo_product(std::int64_t m, std::int64_t n, PrimeFactorMode mode) {
  auto vm = detail::valuations(m), vn = detail::valuations(n);
  std::map<std::int64_t, std::pair<int, int>> e;
  for (auto& [p, k] : vm) e[p].first = k;
  for (auto& [p, l] : vn) e[p].second = l;
  Rational f = 1;
  for (auto& [p, kl] : e) f *= prime_power_factor(p, kl.first, kl.second, mode);
  return ClosedFormValue::pi2(f / 12);
}

// Closed product formula for m(phi_m, phi_n) with the uncorrected factor 2^{r((m,n))}.
inline ClosedFormValue m2_pair_cyclo_formula(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw std::domain_error("m2_pair_cyclo_formula needs positive indices");
  const std::int64_t g = std::gcd(m, n), l = lcm64(m, n);
  auto rm = arithmetic_functions(m).distinct_primes, rn = arithmetic_functions(n).distinct_primes;
  auto rg = arithmetic_functions(g).distinct_primes;
  Rational q = Rational(BigInt(g) * totient(l)) / Rational(BigInt(l) * l);
  q *= Rational(BigInt(1) << rg);
  if ((rm + rn) % 2) q = -q;
  for (std::int64_t p : prime_factors(m * n / g))
    if (g % p) q *= p;
  return ClosedFormValue::pi2(q / 12);
}

struct CycloPairComparison {
  ClosedFormValue oracle;     // Moebius double sum
  ClosedFormValue formula;    // closed product formula, uncorrected
  ClosedFormValue corrected;  // product formula with the corrected factor
  bool formula_agrees = false;
  bool corrected_agrees = false;
};

inline CycloPairComparison compare_cyclo_pair(std::int64_t m, std::int64_t n) {
  CycloPairComparison c;
  c.oracle = m2_pair_cyclo(m, n);
  c.formula = m2_pair_cyclo_formula(m, n);
  c.corrected = m2_pair_cyclo_product(m, n, PrimeFactorMode::Corrected);
  c.formula_agrees = c.formula == c.oracle;
  c.corrected_agrees = c.corrected == c.oracle;
  return c;
}

// m_2 of prod (x^d - 1)^{e_d}, bilinear in the exponents.
inline ClosedFormValue m2_cyclo_product(const CycloProduct& C) {
  Rational s = 0;
  for (auto& [d1, e1] : C.exponents())
    for (auto& [d2, e2] : C.exponents()) {
      std::int64_t g = std::gcd(d1, d2);
      s += Rational(BigInt(e1) * e2 * g * g) / Rational(BigInt(d1) * d2);
    }
  return ClosedFormValue::pi2(s / 12);
}

// ---------------------------------------------------------------------------
// Triple measures

// m(1-x, 1-e^{2 pi i alpha} x, 1-e^{2 pi i beta} x) from the nine-term
// Clausen combination.
inline ClosedFormValue m3_triple_unit(const Rational& alpha, const Rational& beta) {
  const Rational a = frac_r(alpha), b = frac_r(beta);
  const Rational half(1, 2);
  ClosedFormValue v;
  v += pi_s2_value(half * s1_coeff(b - a), b);
  v += pi_s2_value(half * s1_coeff(b), b - a);
  v += pi_s2_value(half * s1_coeff(a - b), a);
  v += pi_s2_value(half * s1_coeff(a), a - b);
  v += pi_s2_value(half * s1_coeff(a), b);
  v += pi_s2_value(half * s1_coeff(b), a);
  v += Rational(-half) * c3_value(a);
  v += Rational(-half) * c3_value(b);
  v += Rational(-half) * c3_value(b - a);
  return v;
}

// The same quantity from its double cosine series, truncated at k, l <= K.
// err is twice the change from K/2 to K (the tail decays like log K / K).
inline SeriesValue m3_triple_unit_series(const Rational& alpha, const Rational& beta, std::int64_t K = 2000) {
  std::int64_t aa, qa, ab, qb;
  detail::reduce_turn(alpha, aa, qa);
  detail::reduce_turn(beta, ab, qb);
  const std::int64_t q = lcm64(qa, qb);
  const std::int64_t A = aa * (q / qa), B = ab * (q / qb);
  std::vector<double> cs(static_cast<std::size_t>(q));
  for (std::int64_t r = 0; r < q; ++r) cs[static_cast<std::size_t>(r)] = detail::cos_turns(r, q);
  auto run = [&](std::int64_t Kmax) {
    CompensatedSum s;
    for (std::int64_t k = Kmax; k >= 1; --k)
      for (std::int64_t l = Kmax; l >= 1; --l) {
        double w = 1.0 / (static_cast<double>(k) * static_cast<double>(l) * static_cast<double>(k + l));
        double c = cs[static_cast<std::size_t>(mod64((k + l) * B - l * A, q))] +
                   cs[static_cast<std::size_t>(mod64((k + l) * A - l * B, q))] +
                   cs[static_cast<std::size_t>(mod64(k * A + l * B, q))];
        s.add(c * w);
      }
    return std::pair{-0.25 * s.value(), 0.25 * s.rounding()};
  };
  auto [full, r1] = run(K);
  auto [half, r2] = run(K / 2);
  return {full, 2.0 * std::abs(full - half) + r1 + r2, K * K};
}

// m_3 of prod (x - e^{2 pi i alpha_j}) with sorted arguments.
inline ClosedFormValue m3_unit_poly(const UnitArgSet& A) {
  if (A.size() == 0) throw std::domain_error("m3_unit_poly needs at least one argument");
  const auto n = static_cast<std::int64_t>(A.size());
  ClosedFormValue v = ClosedFormValue::zeta3(Rational(-3 * BigInt(n) * n, 2));
  const std::int64_t D = detail::common_denominator(A);
  if (D) {
    // Group the pairs k < l by their difference alpha_l - alpha_k.
    auto x = detail::scaled_numerators(A, D);
    struct Acc {
      std::int64_t count = 0;
      __int128 index_gap = 0;
    };
    std::map<std::int64_t, Acc> groups;
    for (std::int64_t k = 0; k < n; ++k)
      for (std::int64_t l = k + 1; l < n; ++l) {
        auto& g = groups[x[static_cast<std::size_t>(l)] - x[static_cast<std::size_t>(k)]];
        ++g.count;
        g.index_gap += l - k;
      }
    for (auto& [diff, g] : groups) {
      Rational delta = make_rational(diff, D);
      v += Rational(-3 * BigInt(n) * g.count) * c3_value(delta);
      // -3 pi S_2 * sum (n delta - (l - k))
      Rational w = Rational(BigInt(n) * g.count) * delta - Rational(detail::to_big(g.index_gap));
      v += pi_s2_value(-3 * w, delta);
    }
    return v;
  }
  const auto& a = A.args();
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t l = k + 1; l < n; ++l) {
      Rational delta = a[static_cast<std::size_t>(l)] - a[static_cast<std::size_t>(k)];
      v += Rational(-3 * n) * c3_value(delta);
      v += pi_s2_value(-3 * (Rational(n) * delta - Rational(l - k)), delta);
    }
  return v;
}

struct M3Options {
  std::int64_t h_max = 1000000;
  // Fold cotangent sums with denominator 1, 2 or 4 into the constant basis.
  bool fold_exact = true;
};

// m(x^a - 1, x^b - 1, x^c - 1) from the zeta(3) lead term and six cotangent sums.
inline ClosedFormValue m3_triple_xn(std::int64_t a, std::int64_t b, std::int64_t c, const M3Options& opt = {}) {
  if (a < 1 || b < 1 || c < 1) throw std::domain_error("m3_triple_xn needs positive exponents");
  const std::int64_t g = std::gcd(a, std::gcd(b, c));
  a /= g, b /= g, c /= g;
  const BigInt A = a, B = b, C = c;
  auto cube = [](const BigInt& x) { return x * x * x; };
  const BigInt lab = lcm64(a, b), lbc = lcm64(b, c), lca = lcm64(c, a);
  Rational lead = Rational(A * B * C) * (Rational(1) / Rational(cube(lab)) + Rational(1) / Rational(cube(lbc)) +
                                         Rational(1) / Rational(cube(lca)));
  ClosedFormValue v = ClosedFormValue::zeta3(-lead / 2);

  // Ordered pairs (d, e) with third exponent f:
  //   (1/2) pi/(2 f (d,e)) sum_{e_d not| f h} cot(pi [d_e^{-1}]_{e_d} f h / e_d) / h^2
  const std::int64_t trip[6][3] = {{a, b, c}, {a, c, b}, {b, c, a}, {b, a, c}, {c, a, b}, {c, b, a}};
  for (auto& t : trip) {
    const std::int64_t d = t[0], e = t[1], f = t[2];
    const std::int64_t gde = std::gcd(d, e);
    const std::int64_t e_d = e / gde, d_e = d / gde;
    if (e_d == 1) continue;
    const std::int64_t inv = modinv64(d_e, e_d);
    const std::int64_t tn = static_cast<std::int64_t>((static_cast<__int128>(inv) * f) % e_d);
    const Rational coef = Rational(1) / Rational(4 * BigInt(f) * gde);
    const std::int64_t gg = std::gcd(tn, e_d), q = e_d / gg, r0 = tn / gg;
    if (opt.fold_exact && q <= 2) continue;
    if (opt.fold_exact && q == 4) {
      v.q_piL4 += r0 % 4 == 1 ? coef : Rational(-coef);
      continue;
    }
    SeriesValue s = cot_weighted_sum(tn, e_d, e_d, opt.h_max);
    v.add_residual(scale(to_double(coef) * kPi, s));
  }
  return v;
}

// H_d(x, y): multiples of 1/d in [x, y] with endpoints at weight 1/2,
// antisymmetric in (x, y).
inline Rational h_count(std::int64_t d, const Rational& x, const Rational& y) {
  const Rational dx = Rational(d) * x, dy = Rational(d) * y;
  return Rational(floor_r(dy) + ceil_r(dy) - floor_r(dx) - ceil_r(dx)) / 2;
}

inline Rational h_count_bruteforce(std::int64_t d, const Rational& x, const Rational& y) {
  if (y < x) return -h_count_bruteforce(d, y, x);
  Rational s = 0;
  BigInt lo = floor_r(Rational(d) * x), hi = ceil_r(Rational(d) * y);
  for (BigInt m = lo; m <= hi; ++m) {
    Rational t = Rational(m) / Rational(d);
    if (t < x || t > y) continue;
    s += (t == x || t == y) ? Rational(1, 2) : Rational(1);
  }
  if (x == y) return 0;
  return s;
}

// m(x^a-1, x^b-1, x^c-1) from the pair sums with H_d weights: the route
// before the cotangent transformation. Clausen values are cached by argument.
inline ClosedFormValue m3_triple_xn_pairs(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a < 1 || b < 1 || c < 1) throw std::domain_error("m3_triple_xn_pairs needs positive exponents");
  // -2m = sum over the three index pairs of
  //   w C_3(2 pi delta) + pi S_2(2 pi delta) (w delta + H_w(x, y)),  delta = x - y
  std::map<Rational, Rational> c3w, s2w;
  auto block = [&](std::int64_t w, std::int64_t p, std::int64_t q) {
    for (std::int64_t i = 0; i < p; ++i)
      for (std::int64_t j = 0; j < q; ++j) {
        Rational x = make_rational(i, p), y = make_rational(j, q);
        Rational delta = x - y;
        Rational key = frac_r(delta);
        c3w[key] += w;
        s2w[key] += Rational(w) * delta + h_count(w, x, y);
      }
  };
  block(a, b, c);
  block(b, c, a);
  block(c, a, b);
  ClosedFormValue v;
  for (auto& [key, w] : c3w) v += Rational(-w / 2) * c3_value(key);
  for (auto& [key, w] : s2w) v += pi_s2_value(-w / 2, key);
  return v;
}

// m(x^a-1, x^b-1, x^c-1) as the direct sum of m3_triple_unit over all root
// triples.
inline ClosedFormValue m3_triple_xn_direct(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::map<std::pair<Rational, Rational>, std::int64_t> count;
  for (std::int64_t j = 0; j < a; ++j)
    for (std::int64_t k = 0; k < b; ++k)
      for (std::int64_t l = 0; l < c; ++l) {
        Rational x = make_rational(j, a);
        ++count[{frac_r(make_rational(k, b) - x), frac_r(make_rational(l, c) - x)}];
      }
  ClosedFormValue v;
  for (auto& [ab, n] : count) v += Rational(n) * m3_triple_unit(ab.first, ab.second);
  return v;
}

// m_3 of prod (x^d - 1)^{e_d}, trilinear in the exponents.
inline ClosedFormValue m3_cyclo_product(const CycloProduct& P, const M3Options& opt = {}) {
  std::vector<std::pair<std::int64_t, int>> e(P.exponents().begin(), P.exponents().end());
  ClosedFormValue v;
  // Sum over multisets i <= j <= k with their multinomial weight.
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i; j < e.size(); ++j)
      for (std::size_t k = j; k < e.size(); ++k) {
        int mult = (i == j && j == k) ? 1 : (i == j || j == k) ? 3 : 6;
        BigInt w = BigInt(mult) * e[i].second * e[j].second * e[k].second;
        v += Rational(w) * m3_triple_xn(e[i].first, e[j].first, e[k].first, opt);
      }
  return v;
}

// ---------------------------------------------------------------------------
// m_l(x - 1)

namespace detail {

inline void compositions(int rest, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int b = 2; b <= rest; ++b) {
    cur.push_back(b);
    compositions(rest - b, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// Compositions of l with every part >= 2.
inline std::vector<std::vector<int>> compositions_ge2(int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  detail::compositions(l, cur, out);
  return out;
}

// m_l(x-1) = sum over compositions b of l with parts >= 2 of
// (-1)^l l!/4^j zeta(b_1..b_j). zeta(2) and zeta(3) stay exact; everything
// else (pi^4 and beyond, odd zeta, depth >= 2) is numeric.
inline ClosedFormValue m_l_one_minus_x(int l) {
  if (l < 1 || l > 7) throw std::domain_error("m_l_one_minus_x supports 1 <= l <= 7");
  BigInt fact = 1;
  for (int i = 2; i <= l; ++i) fact *= i;
  ClosedFormValue v;
  for (auto& comp : compositions_ge2(l)) {
    Rational w = Rational(l % 2 ? BigInt(-fact) : fact) / Rational(BigInt(1) << (2 * comp.size()));
    if (comp.size() == 1 && comp[0] == 2) {
      v.q_pi2 += w * zeta_even_coeff(2);
    } else if (comp.size() == 1 && comp[0] == 3) {
      v.q_zeta3 += w;
    } else {
      v.add_residual(scale(to_double(w), mzv(comp)));
    }
  }
  return v;
}

}  // namespace mahler
