#pragma once

#include "mahler/numeric.hpp"
#include "mahler/rational.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

// Exact Bernoulli number B_n with B_1 = -1/2.
inline Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  if (n < 0) throw std::domain_error("negative Bernoulli index");
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    Rational s = 0;
    BigInt binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * cache[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-s / Rational(binom));
  }
  return cache[static_cast<std::size_t>(n)];
}

// Bernoulli polynomial B_n(x) at a rational point.
inline Rational bernoulli_poly(int n, const Rational& x) {
  Rational s = 0, xp = 1;
  BigInt binom = 1;  // C(n, n-k) built from the top
  std::vector<Rational> xpow(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    xpow[static_cast<std::size_t>(i)] = xp;
    xp *= x;
  }
  for (int k = 0; k <= n; ++k) {
    s += Rational(binom) * bernoulli(k) * xpow[static_cast<std::size_t>(n - k)];
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

inline double pi_pow(int k) { return std::pow(kPi, k); }

// zeta(2k) = q pi^{2k}
inline Rational zeta_even_coeff(int s) {
  if (s < 2 || s % 2) throw std::domain_error("zeta_even_coeff needs an even s >= 2");
  const int k = s / 2;
  BigInt fact = 1;
  for (int i = 2; i <= s; ++i) fact *= i;
  Rational q = bernoulli(s) * Rational(BigInt(1) << s) / Rational(2 * fact);
  return k % 2 ? q : Rational(-q);
}

inline SeriesValue zeta(int s) {
  if (s < 2 || s > 30) throw std::domain_error("zeta(s) supports integers 2 <= s <= 30");
  if (s % 2 == 0) {
    double v = to_double(zeta_even_coeff(s)) * pi_pow(s);
    return {v, 4.0 * kEps * v, 0};
  }
  const std::int64_t N = 32;
  CompensatedSum acc;
  for (std::int64_t n = N - 1; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -s));
  SeriesValue t = em_tail(s, 1.0, 0.0, N);
  acc.add(t.value);
  return {acc.value(), t.err + acc.rounding(), N};
}

// Multiple zeta value zeta(b_1,...,b_j) = sum_{p_1<...<p_j} prod p_i^{-b_i}.
// Nested partial sums up to N; each nesting level's tail is enclosed between
// the partial and the full value of the inner sum.
inline SeriesValue mzv(const std::vector<int>& comp, std::int64_t N = 1 << 18) {
  if (comp.empty() || comp.size() > 3) throw std::domain_error("mzv supports depth 1..3");
  int weight = 0;
  for (int b : comp) {
    if (b < 2) throw std::domain_error("mzv parts must be >= 2");
    weight += b;
  }
  if (weight > 12) throw std::domain_error("mzv supports weight <= 12");
  if (comp.size() == 1) return zeta(comp[0]);

  const std::size_t j = comp.size();
  std::vector<CompensatedSum> Z(j);
  std::vector<double> zprev(j, 0.0);
  for (std::int64_t p = 1; p <= N; ++p) {
    const double dp = static_cast<double>(p);
    for (std::size_t i = j - 1; i >= 1; --i) {
      if (zprev[i - 1] != 0.0) Z[i].add(std::pow(dp, -comp[i]) * zprev[i - 1]);
    }
    Z[0].add(std::pow(dp, -comp[0]));
    for (std::size_t i = 0; i < j; ++i) zprev[i] = Z[i].value();
  }
  // Tail enclosures.
  double err = 0.0;
  SeriesValue R0 = em_tail(comp[0], 1.0, 0.0, N + 1);
  double lo = R0.value - R0.err, hi = R0.value + R0.err;  // tail of level 0
  double est = R0.value;
  for (std::size_t i = 1; i < j; ++i) {
    SeriesValue R = em_tail(comp[i], 1.0, 0.0, N + 1);
    double inner_lo = zprev[i - 1];
    double inner_hi = zprev[i - 1] + hi;
    double tlo = inner_lo * (R.value - R.err);
    double thi = inner_hi * (R.value + R.err);
    lo = tlo;
    hi = thi;
    est = 0.5 * (tlo + thi);
  }
  err = 0.5 * (hi - lo);
  double value = zprev[j - 1] + est;
  for (auto& z : Z) err += z.rounding();
  return {value, err, N};
}

enum class TrigKind { Cos, Sin };

namespace detail {

// sin and cos of 2 pi r/q with exact values at multiples of a quarter turn.
inline double sin_turns(std::int64_t r, std::int64_t q) {
  r = mod64(r, q);
  if (r == 0 || 2 * r == q) return 0.0;
  if (4 * r == q) return 1.0;
  if (4 * r == 3 * q) return -1.0;
  return std::sin(2.0 * kPi * static_cast<double>(r) / static_cast<double>(q));
}
inline double cos_turns(std::int64_t r, std::int64_t q) {
  r = mod64(r, q);
  if (r == 0) return 1.0;
  if (2 * r == q) return -1.0;
  if (4 * r == q || 4 * r == 3 * q) return 0.0;
  if (6 * r == q || 6 * r == 5 * q) return 0.5;
  if (3 * r == q || 3 * r == 2 * q) return -0.5;
  return std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(q));
}

inline void reduce_turn(const Rational& gamma, std::int64_t& a, std::int64_t& q) {
  Rational g = frac_r(gamma);
  a = to_i64(num(g));
  q = to_i64(den(g));
}

}  // namespace detail

// True when S_ell or C_ell has a Bernoulli-polynomial closed form.
inline bool clausen_has_closed_form(int ell, TrigKind kind) {
  return (kind == TrigKind::Cos) == (ell % 2 == 0);
}

// For the closed-form cases with ell >= 2 (and S_1 away from 0): the rational
// q with value = q pi^ell. Argument is 2 pi gamma.
inline Rational clausen_closed_coeff(int ell, TrigKind kind, const Rational& gamma) {
  if (!clausen_has_closed_form(ell, kind)) throw std::domain_error("no Bernoulli closed form for this Clausen function");
  Rational x = frac_r(gamma);
  if (ell == 1) {
    if (x == 0) return 0;
    return -(x - Rational(1, 2));
  }
  // sum trig(2 pi n x)/n^ell = (-1)^{k+1} (2pi)^ell B_ell(x) / (2 ell!), k = floor(ell/2)
  const int k = ell / 2;
  BigInt fact = 1;
  for (int i = 2; i <= ell; ++i) fact *= i;
  Rational q = bernoulli_poly(ell, x) * Rational(BigInt(1) << ell) / Rational(2 * fact);
  return k % 2 ? q : Rational(-q);
}

// Direct periodic series with Euler-Maclaurin tails, for ell >= 2.
inline SeriesValue clausen_series(int ell, TrigKind kind, const Rational& gamma) {
  if (ell < 2 || ell > 6) throw std::domain_error("clausen_series needs 2 <= ell <= 6");
  std::int64_t a, q;
  detail::reduce_turn(gamma, a, q);
  std::vector<double> f(static_cast<std::size_t>(q));
  for (std::int64_t n = 1; n <= q; ++n)
    f[static_cast<std::size_t>(n - 1)] = kind == TrigKind::Sin ? detail::sin_turns(n * a, q) : detail::cos_turns(n * a, q);
  return periodic_dirichlet(f, ell);
}

// S_ell(2 pi gamma) = sum sin(2 pi n gamma)/n^ell, C_ell likewise with cos.
inline SeriesValue clausen(int ell, TrigKind kind, const Rational& gamma) {
  if (ell < 1 || ell > 6) throw std::domain_error("clausen supports 1 <= ell <= 6");
  Rational x = frac_r(gamma);
  if (ell == 1 && kind == TrigKind::Cos) {
    if (x == 0) throw std::domain_error("C_1 diverges at argument 0");
    std::int64_t a, q;
    detail::reduce_turn(x, a, q);
    double s = std::sin(kPi * static_cast<double>(a) / static_cast<double>(q));
    double v = -std::log(2.0 * std::abs(s));
    return {v, 4.0 * kEps * (1.0 + std::abs(v)), 0};
  }
  if (clausen_has_closed_form(ell, kind)) {
    double v = to_double(clausen_closed_coeff(ell, kind, x)) * pi_pow(ell);
    return {v, 4.0 * kEps * std::abs(v), 0};
  }
  return clausen_series(ell, kind, x);
}

// Complex dilogarithm for |z| <= 1 (+1e-12).
inline std::complex<double> li2_complex(std::complex<double> z, double* err_out = nullptr) {
  using C = std::complex<double>;
  const double r = std::abs(z);
  if (r > 1.0 + 1e-12) throw std::domain_error("li2 requires |z| <= 1");
  double err = 0.0;
  C val;
  if (z == C(0.0)) {
    val = 0.0;
  } else if (z.real() > 0.5) {
    C w = 1.0 - z;
    double e2 = 0.0;
    C lw = w == C(0.0) ? C(0.0) : li2_complex(w, &e2);
    C cross = w == C(0.0) ? C(0.0) : std::log(z) * std::log(w);
    val = kPi * kPi / 6.0 - cross - lw;
    err = e2 + 8.0 * kEps * (std::abs(cross) + 2.0);
  } else if (r < 0.5) {
    C term = z, acc = 0.0;
    int n = 1;
    C zn = z;
    while (true) {
      term = zn / (static_cast<double>(n) * n);
      acc += term;
      if (std::abs(term) < 1e-18) break;
      zn *= z;
      ++n;
    }
    val = acc;
    err = 2.0 * std::abs(zn * z) / ((n + 1.0) * (n + 1.0) * (1.0 - r)) + 4.0 * kEps * std::abs(acc);
  } else {
    // Bernoulli series in u = -log(1-z), |u| < 1.3 here.
    C u = -std::log(1.0 - z);
    C u2 = u * u;
    C acc = u - u2 / 4.0;
    C up = u;  // u^{2k+1}
    double fact = 1.0;  // (2k+1)!
    int k = 1;
    for (; k <= 14; ++k) {
      up *= u2;
      fact *= (2.0 * k) * (2.0 * k + 1);
      acc += bernoulli_double(2 * k) / fact * up;
    }
    // |B_{2k}/(2k+1)!| <= 4/((2k+1)(2 pi)^{2k}); bound the tail geometrically.
    double ratio = std::norm(u) / (4.0 * kPi * kPi);
    double next = 4.0 * std::abs(up) * std::abs(u2) / ((2.0 * k + 1) * std::pow(2.0 * kPi, 2 * k));
    val = acc;
    err = next / (1.0 - ratio) + 16.0 * kEps * (std::abs(acc) + std::abs(u));
  }
  if (err_out) *err_out = err;
  return val;
}

inline SeriesValue re_li2(std::complex<double> z) {
  double err = 0.0;
  std::complex<double> v = li2_complex(z, &err);
  return {v.real(), err, 0};
}

// L(2, chi_D) for D = -3 or -4.
inline SeriesValue dirichlet_L2(int D) {
  if (D == -4) return periodic_dirichlet({1.0, 0.0, -1.0, 0.0}, 2.0, 64);
  if (D == -3) return periodic_dirichlet({1.0, -1.0, 0.0}, 2.0, 64);
  throw std::domain_error("dirichlet_L2 supports D = -3 and D = -4");
}

// ((x)) = x - floor(x) - 1/2 off the integers, 0 on them.
inline Rational sawtooth2(const Rational& x) {
  Rational f = frac_r(x);
  if (f == 0) return 0;
  return f - Rational(1, 2);
}

struct DomainErrorAt : std::domain_error {
  DomainErrorAt(const std::string& msg, std::int64_t h_) : std::domain_error(msg + " at h = " + std::to_string(h_)), h(h_) {}
  std::int64_t h;
};

// sum_{1<=h<=h_max, skip_den does not divide theta_num*h} cot(pi theta_num h/theta_den)/h^2.
// The summand is periodic in h and odd about the period, so its partial sums
// are bounded by B and the tail is at most 2B/(h_max+1)^2 once a full period
// fits below h_max; otherwise the bound is theta_den/h_max.
inline SeriesValue cot_weighted_sum(std::int64_t theta_num, std::int64_t theta_den, std::int64_t skip_den,
                                    std::int64_t h_max = 1000000) {
  if (theta_den < 1 || skip_den < 1 || h_max < 1) throw std::domain_error("cot_weighted_sum needs positive denominators");
  const std::int64_t tn = mod64(theta_num, theta_den);
  const std::int64_t sn = mod64(theta_num, skip_den);
  std::vector<double> cot_table;
  const bool tabulate = theta_den <= 4 * h_max;
  if (tabulate) {
    cot_table.resize(static_cast<std::size_t>(theta_den));
    for (std::int64_t r = 1; r < theta_den; ++r) {
      if (2 * r == theta_den) cot_table[static_cast<std::size_t>(r)] = 0.0;
      else if (4 * r == theta_den) cot_table[static_cast<std::size_t>(r)] = 1.0;
      else if (4 * r == 3 * theta_den) cot_table[static_cast<std::size_t>(r)] = -1.0;
      else cot_table[static_cast<std::size_t>(r)] = 1.0 / std::tan(kPi * static_cast<double>(r) / static_cast<double>(theta_den));
    }
  }
  const std::int64_t period = lcm64(theta_den, skip_den);
  CompensatedSum acc;
  // Accumulate from the top so the small terms come first.
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(h_max));
  std::int64_t r = 0, s = 0;
  double partial = 0.0, B = 0.0;
  for (std::int64_t h = 1; h <= h_max; ++h) {
    r += tn;
    if (r >= theta_den) r -= theta_den;
    s += sn;
    if (s >= skip_den) s -= skip_den;
    double t = 0.0;
    if (s != 0) {
      if (r == 0) throw DomainErrorAt("unexcluded pole in cot_weighted_sum", h);
      t = tabulate ? cot_table[static_cast<std::size_t>(r)]
                   : 1.0 / std::tan(kPi * static_cast<double>(r) / static_cast<double>(theta_den));
    }
    if (h <= period) {
      partial += t;
      B = std::max(B, std::abs(partial));
    }
    terms.push_back(t / (static_cast<double>(h) * static_cast<double>(h)));
  }
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc.add(*it);
  const double hn = static_cast<double>(h_max);
  double tail = static_cast<double>(theta_den) / hn;
  if (period <= h_max) tail = std::min(tail, 2.0 * (B + 1e-9 * (1.0 + B)) / ((hn + 1.0) * (hn + 1.0)));
  return {acc.value(), tail + acc.rounding(), h_max};
}

}  // namespace mahler
