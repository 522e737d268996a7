#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mahler {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// A numerically evaluated quantity with an error bound.
struct SeriesValue {
  double value = 0.0;
  double err = 0.0;
  std::int64_t terms_used = 0;
};

inline SeriesValue operator+(SeriesValue a, const SeriesValue& b) {
  return {a.value + b.value, a.err + b.err + kEps * std::abs(a.value + b.value),
          a.terms_used + b.terms_used};
}
inline SeriesValue operator-(SeriesValue a, const SeriesValue& b) {
  return {a.value - b.value, a.err + b.err + kEps * std::abs(a.value - b.value),
          a.terms_used + b.terms_used};
}
inline SeriesValue scale(double c, SeriesValue a) {
  return {c * a.value, std::abs(c) * a.err + kEps * std::abs(c * a.value), a.terms_used};
}
inline SeriesValue product(const SeriesValue& a, const SeriesValue& b) {
  double v = a.value * b.value;
  return {v, std::abs(a.value) * b.err + std::abs(b.value) * a.err + a.err * b.err + kEps * std::abs(v),
          a.terms_used + b.terms_used};
}

// Neumaier compensated summation. Also tracks the sum of magnitudes so the
// caller can bound rounding error.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }
  // Rounding bound: compensated accumulation plus one ulp per summand.
  double rounding() const { return kEps * (2.0 * std::abs(value()) + abs_); }

 private:
  double sum_ = 0.0, comp_ = 0.0, abs_ = 0.0;
};

// Bernoulli numbers B_0..B_30 as doubles (B_1 = -1/2).
inline double bernoulli_double(int n) {
  static const double b[] = {1.0, -0.5, 1.0 / 6, 0.0, -1.0 / 30, 0.0, 1.0 / 42, 0.0, -1.0 / 30, 0.0,
                             5.0 / 66, 0.0, -691.0 / 2730, 0.0, 7.0 / 6, 0.0, -3617.0 / 510, 0.0,
                             43867.0 / 798, 0.0, -174611.0 / 330, 0.0, 854513.0 / 138, 0.0,
                             -236364091.0 / 2730, 0.0, 8553103.0 / 6, 0.0, -23749461029.0 / 870, 0.0,
                             8615841276005.0 / 14322};
  if (n < 0 || n > 30) throw std::out_of_range("bernoulli_double index");
  return b[n];
}

// Sum_{k >= K} (q k + r)^(-s) for real s > 1, q > 0, q K + r > 0, by
// Euler-Maclaurin. The summand is completely monotone, so the remainder is
// bounded by the first omitted correction term.
inline SeriesValue em_tail(double s, double q, double r, std::int64_t K, int corrections = 8) {
  double X = q * static_cast<double>(K) + r;
  if (X <= 0.0 || s <= 1.0) throw std::domain_error("em_tail requires s > 1 and a positive start");
  double value = std::pow(X, 1.0 - s) / (q * (s - 1.0)) + 0.5 * std::pow(X, -s);
  // term_i = B_{2i}/(2i)! * q^{2i-1} * (s)_{2i-1} * X^{-s-2i+1}
  double rising = s;        // (s)_{1}
  double fact = 2.0;        // (2i)!
  double qpow = q;          // q^{2i-1}
  double xpow = std::pow(X, -s - 1.0);
  double last = 0.0;
  for (int i = 1; i <= corrections + 1; ++i) {
    double term = bernoulli_double(2 * i) / fact * qpow * rising * xpow;
    if (i == corrections + 1) {
      last = std::abs(term);
      break;
    }
    value += term;
    rising *= (s + 2 * i - 1) * (s + 2 * i);
    fact *= (2.0 * i + 1) * (2.0 * i + 2);
    qpow *= q * q;
    xpow /= X * X;
  }
  return {value, last + 4.0 * kEps * std::abs(value), corrections};
}

// Sum_{n>=1} f(n) n^{-s} for q-periodic f, with f given on residues 1..q
// (coeffs[i] = f(i+1)). The first K periods are summed directly and each
// residue-class tail uses em_tail.
inline SeriesValue periodic_dirichlet(const std::vector<double>& coeffs, double s, std::int64_t periods = 16) {
  const auto q = static_cast<std::int64_t>(coeffs.size());
  if (q == 0) throw std::invalid_argument("periodic_dirichlet needs at least one coefficient");
  CompensatedSum direct;
  // Summing from the far end keeps small terms from being absorbed.
  for (std::int64_t n = periods * q; n >= 1; --n) {
    double c = coeffs[static_cast<std::size_t>((n - 1) % q)];
    if (c != 0.0) direct.add(c * std::pow(static_cast<double>(n), -s));
  }
  CompensatedSum tail;
  double err = direct.rounding();
  for (std::int64_t r = 1; r <= q; ++r) {
    double c = coeffs[static_cast<std::size_t>(r - 1)];
    if (c == 0.0) continue;
    SeriesValue t = em_tail(s, static_cast<double>(q), static_cast<double>(r), periods);
    tail.add(c * t.value);
    err += std::abs(c) * t.err;
  }
  err += tail.rounding();
  return {direct.value() + tail.value(), err, periods * q};
}

}  // namespace mahler
