#pragma once

#include "mahler/closed_form.hpp"
#include "mahler/exact.hpp"
#include "mahler/numeric.hpp"
#include "mahler/parallel.hpp"
#include "mahler/poly.hpp"
#include "mahler/quad.hpp"
#include "mahler/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

// (r pi / p) sum_{h >= 1, p does not divide rh} cot(pi r h / p) / h^2.
inline SeriesValue cot_limit(std::int64_t r, std::int64_t p, std::int64_t h_max = 1000000) {
  if (r == 0) throw std::domain_error("cot_limit needs r != 0");
  if (p < 2) throw std::domain_error("cot_limit needs p >= 2");
  return scale(static_cast<double>(r) * kPi / static_cast<double>(p), cot_weighted_sum(r, p, p, h_max));
}

// (4 pi / p) sum_{h >= 1, p does not divide h} cot(pi (p+1) h / (2p)) / h^2, p odd.
inline SeriesValue cot_limit_half(std::int64_t p, std::int64_t h_max = 1000000) {
  if (p < 3 || p % 2 == 0) throw std::domain_error("cot_limit_half needs odd p >= 3");
  return scale(4.0 * kPi / static_cast<double>(p), cot_weighted_sum(p + 1, 2 * p, p, h_max));
}

enum class M3Family { CycloQuotient, CycloTimesLinear, Quartic };

inline const char* family_name(M3Family f) {
  switch (f) {
    case M3Family::CycloQuotient: return "cyclo_quotient";
    case M3Family::CycloTimesLinear: return "cyclo_times_linear";
    default: return "quartic_family";
  }
}

// Limit of each m_3 family as its parameter grows.
inline ClosedFormValue m3_seq_limit(M3Family f) {
  switch (f) {
    case M3Family::CycloQuotient: return {};
    case M3Family::CycloTimesLinear: return ClosedFormValue::zeta3(-3);
    default: {
      ClosedFormValue v = ClosedFormValue::zeta3(Rational(-27, 2));
      v.q_piL4 = 6;
      return v;
    }
  }
}

// The polynomial each family member measures, as a product of x^d - 1.
inline CycloProduct m3_seq_product(M3Family f, std::int64_t p) {
  CycloProduct C;
  switch (f) {
    case M3Family::CycloQuotient: C.add(p, 1); C.add(1, -1); break;
    case M3Family::CycloTimesLinear: C.add(p, 1); C.add(1, 1); break;
    default: C.add(4, 1); C.add(2 * p, 1); C.add(1, -2); break;
  }
  return C;
}

// m_3 of (x^p-1)/(x-1), (x^p-1)(x-1), and (x^4-1)(x^{2p}-1)/(x-1)^2 (p odd)
// through their closed forms in zeta(3), pi L(2,chi_-4) and cotangent sums.
inline ClosedFormValue m3_seq(M3Family f, std::int64_t p, std::int64_t h_max = 1000000) {
  ClosedFormValue v;
  const Rational P(p);
  auto cot = [&](std::int64_t tn, std::int64_t td, std::int64_t skip, double c) {
    v.add_residual(scale(c * kPi, cot_weighted_sum(tn, td, skip, h_max)));
  };
  switch (f) {
    case M3Family::CycloQuotient:
    case M3Family::CycloTimesLinear: {
      if (p < 2) throw std::domain_error("m3_seq needs p >= 2");
      const bool quot = f == M3Family::CycloQuotient;
      const Rational num = quot ? Rational(9 * P - 6 - 3 * P * P * P) : Rational(-6 * P * P - 9 * P - 6 - 3 * P * P * P);
      v.q_zeta3 = num / (2 * P * P);
      cot(1, p, p, 1.5);
      break;
    }
    case M3Family::Quartic: {
      if (p < 3 || p % 2 == 0) throw std::domain_error("quartic_family needs odd d >= 3");
      v.q_zeta3 = (9 + 3 * P - 54 * P * P - 48 * P * P * P) / (4 * P * P);
      v.q_piL4 = 6;
      cot(1, p, p, 0.75);
      cot(1, 2 * p, 2 * p, 6.0);
      cot(2, p, p, -0.75);
      cot(p + 1, 2 * p, p, -1.5);
      break;
    }
  }
  return v;
}

enum class SequenceFamily { M2Trinomial, M3Quotient, M3Product, M3Quartic };

inline const char* family_name(SequenceFamily f) {
  switch (f) {
    case SequenceFamily::M2Trinomial: return "m2_trinomial";
    case SequenceFamily::M3Quotient: return "m3_quotient";
    case SequenceFamily::M3Product: return "m3_product";
    default: return "m3_quartic";
  }
}

inline SequenceFamily parse_sequence_family(const std::string& s) {
  if (s == "m2_trinomial") return SequenceFamily::M2Trinomial;
  if (s == "m3_quotient" || s == "cyclo_quotient") return SequenceFamily::M3Quotient;
  if (s == "m3_product" || s == "cyclo_times_linear") return SequenceFamily::M3Product;
  if (s == "m3_quartic" || s == "quartic_family") return SequenceFamily::M3Quartic;
  throw std::invalid_argument("unknown family: " + s);
}

struct SequenceReport {
  std::string family;
  std::vector<std::int64_t> params;
  std::vector<Measurement> values;
  std::optional<ClosedFormValue> limit_target;
  std::vector<double> deltas;

  bool deltas_decreasing() const {
    for (std::size_t i = 1; i < deltas.size(); ++i)
      if (!(deltas[i] < deltas[i - 1])) return false;
    return true;
  }
  double final_delta() const { return deltas.empty() ? 0.0 : deltas.back(); }
};

// Evaluates a family along a ladder of parameters and measures the distance
// to its limit: m_2(x^n+x+2) by quadrature toward pi^2/12, the m_3 families
// by closed form.
inline SequenceReport boyd_lawton_demo(SequenceFamily f, const std::vector<std::int64_t>& ns, const QuadConfig& cfg = {},
                                       std::int64_t h_max = 1000000) {
  SequenceReport rep;
  rep.family = family_name(f);
  rep.params = ns;
  switch (f) {
    case SequenceFamily::M2Trinomial: rep.limit_target = ClosedFormValue::pi2(Rational(1, 12)); break;
    case SequenceFamily::M3Quotient: rep.limit_target = m3_seq_limit(M3Family::CycloQuotient); break;
    case SequenceFamily::M3Product: rep.limit_target = m3_seq_limit(M3Family::CycloTimesLinear); break;
    case SequenceFamily::M3Quartic: rep.limit_target = m3_seq_limit(M3Family::Quartic); break;
  }
  QuadConfig inner = cfg;
  inner.workers = 1;
  rep.values = parallel_map(ns, cfg.workers, [&](std::int64_t n) {
    if (f == SequenceFamily::M2Trinomial) {
      if (n < 2) throw std::domain_error("m2_trinomial needs n >= 2");
      IntPoly P = parse_poly("x^" + std::to_string(n) + "+x+2");
      return mahler_k(P, 2, inner);
    }
    M3Family g = f == SequenceFamily::M3Quotient  ? M3Family::CycloQuotient
               : f == SequenceFamily::M3Product ? M3Family::CycloTimesLinear
                                                : M3Family::Quartic;
    SeriesValue s = m3_seq(g, n, h_max).numeric();
    Measurement m;
    m.value = s.value;
    m.err = s.err;
    m.method = Method::ClosedForm;
    m.panels = 1;
    return m;
  });
  const double target = rep.limit_target->numeric().value;
  for (auto& m : rep.values) rep.deltas.push_back(std::abs(m.value - target));
  return rep;
}

// T_m(0) = sum over nonzero l_1 + ... + l_m = 0 of 1 / |l_1 ... l_m|, which
// is (-2)^m m_m(x-1).
inline SeriesValue t_zero(int m) {
  if (m < 1 || m > 7) throw std::domain_error("t_zero supports 1 <= m <= 7");
  static const std::array<SeriesValue, 8> table = [] {
    std::array<SeriesValue, 8> t{};
    for (int l = 1; l <= 7; ++l) t[static_cast<std::size_t>(l)] = scale(std::pow(-2.0, l), m_l_one_minus_x(l).numeric());
    return t;
  }();
  return table[static_cast<std::size_t>(m)];
}

// Streams T_1(a), ..., T_M(a) for a = 1, 2, ... through the recursion
// T_m(a) = (2m/a) sum_{j=0}^{a} T_{m-1}(j) - (m/a)(T_{m-1}(0) + T_{m-1}(a)).
class TStream {
 public:
  static constexpr int kMaxM = 4;

  TStream() {
    for (int m = 1; m <= kMaxM; ++m) {
      zero_[m] = static_cast<long double>(t_zero(m).value);
      prefix_[m] = zero_[m];
    }
  }

  // Advances a by one and returns T_m(a) for m = 1..kMaxM (index 0 unused).
  const std::array<long double, kMaxM + 1>& next() {
    ++a_;
    const long double a = static_cast<long double>(a_);
    cur_[1] = 1.0L / a;
    for (int m = 2; m <= kMaxM; ++m) {
      const long double S = prefix_[m - 1] + cur_[m - 1];
      cur_[m] = (2.0L * m * S - m * (zero_[m - 1] + cur_[m - 1])) / a;
    }
    for (int m = 1; m <= kMaxM; ++m) prefix_[m] += cur_[m];
    return cur_;
  }

  std::int64_t position() const { return a_; }
  long double zero(int m) const { return zero_[m]; }

 private:
  std::int64_t a_ = 0;
  std::array<long double, kMaxM + 1> zero_{}, prefix_{}, cur_{};
};

// T_m(alpha) by the recursion; T_m(-alpha) = T_m(alpha).
inline SeriesValue t_sum(int m, std::int64_t alpha) {
  if (m < 1 || m > TStream::kMaxM) throw std::domain_error("t_sum supports 1 <= m <= 4");
  if (alpha < 0) alpha = -alpha;
  if (alpha == 0) return t_zero(m);
  TStream ts;
  long double v = 0;
  while (ts.position() < alpha) v = ts.next()[m];
  const double t0 = t_zero(m).err;
  return {static_cast<double>(v), 64.0 * kEps * static_cast<double>(alpha) * std::abs(static_cast<double>(v)) + t0,
          alpha};
}

// Direct truncated evaluation for m <= 3 with |l| <= L. m = 3 uses the
// recursion for the inner T_2.
inline SeriesValue t_sum_direct(int m, std::int64_t alpha, std::int64_t L) {
  if (m < 1 || m > 3) throw std::domain_error("t_sum_direct supports 1 <= m <= 3");
  if (alpha < 0) alpha = -alpha;
  if (L < 2 * std::max<std::int64_t>(alpha, 1)) throw std::domain_error("t_sum_direct needs L >= 2|alpha|");
  if (m == 1) return {alpha == 0 ? 0.0 : 1.0 / static_cast<double>(alpha), 0.0, 1};
  const double Ld = static_cast<double>(L);
  CompensatedSum s;
  if (m == 2) {
    for (std::int64_t l = -L; l <= L; ++l) {
      if (l == 0 || l == alpha) continue;
      s.add(1.0 / (std::abs(static_cast<double>(l)) * std::abs(static_cast<double>(alpha - l))));
    }
    // Both tails: 1/(|l||alpha-l|) <= 2/l^2 when |l| > L >= 2|alpha|.
    return {s.value(), 4.0 / Ld + s.rounding(), 2 * L};
  }
  // T_2 over |beta| <= L + |alpha|, tabulated once.
  const std::int64_t B = L + alpha;
  std::vector<double> t2(static_cast<std::size_t>(B + 1));
  TStream ts;
  t2[0] = static_cast<double>(ts.zero(2));
  for (std::int64_t b = 1; b <= B; ++b) t2[static_cast<std::size_t>(b)] = static_cast<double>(ts.next()[2]);
  for (std::int64_t l = -L; l <= L; ++l) {
    if (l == 0) continue;
    s.add(t2[static_cast<std::size_t>(std::abs(alpha - l))] / std::abs(static_cast<double>(l)));
  }
  // T_2(b) <= 4(1 + log b)/b and |alpha - l| >= |l|/2 beyond L.
  return {s.value(), 16.0 * (2.0 + std::log(Ld / 2.0)) / Ld + s.rounding(), 2 * L};
}

namespace detail {

// int_L^inf log^a(n x) log^b(x) / x^2 dx = (1/L) int_0^inf (A+t)^a (B+t)^b e^{-t} dt.
inline double log_power_tail(int a, int b, double n, double L) {
  const double A = std::log(n * L), B = std::log(L);
  // Expand (A+t)^a (B+t)^b in t, integrate t^i e^{-t} = i!.
  std::vector<double> c(static_cast<std::size_t>(a + b + 1), 0.0);
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j)
      c[static_cast<std::size_t>(i + j)] += std::pow(A, a - i) * std::pow(B, b - j) * std::tgamma(a + 1.0) /
                                            (std::tgamma(i + 1.0) * std::tgamma(a - i + 1.0)) * std::tgamma(b + 1.0) /
                                            (std::tgamma(j + 1.0) * std::tgamma(b - j + 1.0));
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * std::tgamma(static_cast<double>(i) + 1.0);
  return s / L;
}

}  // namespace detail

// All U_{j,k}^{(n)} with 0 <= j, k <= 4 from one streaming pass over
// U = T_j(0)T_k(0) + 2 sum_{alpha >= 1} T_j(n alpha) T_k(alpha), truncated at
// alpha <= L. U_{0,k} = T_k(0) and U_{j,0} = T_j(0).
//
// Past L the summand is modelled by its value at L times the growth of the
// leading log powers; the estimate is added and also taken as the error, so
// the true tail may be anywhere in [0, 2 estimate].
class USums {
 public:
  static constexpr int kMax = TStream::kMaxM;

  USums(std::int64_t n, std::int64_t L) : n_(n), L_(L) {
    if (n < 1 || L < 2) throw std::domain_error("u_sum needs n >= 1 and L >= 2");
    std::array<long double, kMax + 1> z{};
    {
      TStream probe;
      for (int m = 1; m <= kMax; ++m) z[m] = probe.zero(m);
    }
    std::array<std::array<long double, kMax + 1>, kMax + 1> acc{};
    std::array<long double, kMax + 1> tj_at{}, tk_at{};
    TStream big, small;
    for (std::int64_t alpha = 1; alpha <= L; ++alpha) {
      std::array<long double, kMax + 1> tj{};
      for (std::int64_t s = 0; s < n; ++s) tj = big.next();
      const auto& tk = small.next();
      for (int j = 1; j <= kMax; ++j)
        for (int k = 1; k <= kMax; ++k) acc[j][k] += tj[j] * tk[k];
      if (alpha == L) {
        tj_at = tj;
        tk_at = tk;
      }
    }
    const double Ld = static_cast<double>(L), nd = static_cast<double>(n);
    for (int j = 0; j <= kMax; ++j)
      for (int k = 0; k <= kMax; ++k) {
        if (j == 0 || k == 0) {
          const int m = j + k;
          val_[j][k] = m == 0 ? SeriesValue{1.0, 0.0, 0} : t_zero(m);
          continue;
        }
        const double head = static_cast<double>(z[j] * z[k] + 2.0L * acc[j][k]);
        // Growth model: alpha T_m(alpha) ~ c log^{m-1} alpha.
        const double gj = static_cast<double>(tj_at[j]) * nd * Ld / std::pow(std::log(nd * Ld), j - 1);
        const double gk = static_cast<double>(tk_at[k]) * Ld / std::pow(std::log(Ld), k - 1);
        const double tail = 2.0 * gj * gk / nd * detail::log_power_tail(j - 1, k - 1, nd, Ld);
        const double rounding = 1e-15 * std::abs(head) + 4.0 * static_cast<double>(std::numeric_limits<long double>::epsilon()) * static_cast<double>(n * L) * std::abs(head);
        val_[j][k] = {head + tail, tail + rounding, L};
      }
  }

  const SeriesValue& operator()(int j, int k) const {
    if (j < 0 || k < 0 || j > kMax || k > kMax || j + k < 1) throw std::domain_error("u_sum index out of range");
    return val_[j][k];
  }
  std::int64_t n() const { return n_; }
  std::int64_t L() const { return L_; }

 private:
  std::int64_t n_, L_;
  std::array<std::array<SeriesValue, kMax + 1>, kMax + 1> val_{};
};

inline SeriesValue u_sum(int j, int k, std::int64_t n, std::int64_t L = 10000) {
  if (j < 0 || k < 0 || j + k < 1 || j > USums::kMax || k > USums::kMax)
    throw std::domain_error("u_sum needs j, k in [0, 4] and j + k >= 1");
  if (j == 0 || k == 0) return t_zero(j + k);
  return USums(n, L)(j, k);
}

// Default truncation: n L near 2e7 stream steps, and L at least 1e4.
inline std::int64_t default_u_truncation(std::int64_t n) {
  return std::max<std::int64_t>(10000, 20000000 / std::max<std::int64_t>(n, 1));
}

// m_{2h+1}(P_n), P_n = (x^n-1)/(x-1), from the Fourier side:
// sum_j binom(2h+1, j) (-1)^{j+1} / 2^{2h+1} U_{j, 2h+1-j}. The j = 0 and
// j = 2h+1 terms are both T_{2h+1}(0) with opposite signs and cancel.
inline SeriesValue odd_moment_fourier(int h, std::int64_t n, std::int64_t L = 0) {
  if (h < 1 || h > 2) throw std::domain_error("odd_moment_fourier supports h in {1, 2}");
  if (n < 1) throw std::domain_error("odd_moment_fourier needs n >= 1");
  if (L <= 0) L = default_u_truncation(n);
  const USums U(n, L);
  const int K = 2 * h + 1;
  SeriesValue out{};
  double binom = 1.0;
  for (int j = 1; j < K; ++j) {
    binom = binom * (K - j + 1) / j;
    const double c = binom * ((j + 1) % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0, K);
    out = out + scale(c, U(j, K - j));
  }
  return out;
}

// C(j,k) = 2^j j sum_{alpha >= 1} T_k(alpha)/alpha. The sum is T_{k+1}(0)/2.
inline SeriesValue c_jk(int j, int k) {
  if (j < 1 || k < 1 || k > 6) throw std::domain_error("c_jk needs j >= 1 and 1 <= k <= 6");
  return scale(std::pow(2.0, j - 1) * j, t_zero(k + 1));
}

}  // namespace mahler
