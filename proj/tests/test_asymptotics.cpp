#include "mahler/asymptotics.hpp"
#include "mahler/cyclo.hpp"
#include "mahler/quad.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace mahler;
using Catch::Matchers::WithinAbs;

namespace {
const double kZeta3 = 1.2020569031595942;
const double kZeta2 = kPi * kPi / 6;

IntPoly p_n(std::int64_t n) { return to_poly(CycloProduct{{1, -1}, {n, 1}}); }
}  // namespace

TEST_CASE("cotangent limits") {
  CHECK(cot_limit(1, 2).value == 0.0);
  auto a = cot_limit(1, 1000);
  CHECK_THAT(a.value, WithinAbs(kZeta3, 0.05));
  auto b = cot_limit(3, 1000);
  CHECK_THAT(b.value, WithinAbs(kZeta3, 0.05));
  auto h3 = cot_limit_half(3);
  CHECK(std::isfinite(h3.value));
  CHECK_THAT(h3.value, WithinAbs(-1.8895010931, 1e-6));
  CHECK_THAT(cot_limit_half(1001).value, WithinAbs(kZeta3, 0.1));
  CHECK_THROWS_AS(cot_limit_half(4), std::domain_error);
  CHECK_THROWS_AS(cot_limit(0, 5), std::domain_error);
  // For 0 < h < p, cot(pi (p+1) h / (2p)) is cot(pi/2 + pi h/(2p)) when h is
  // odd and cot(pi (h/2) / p) when h is even.
  const std::int64_t p = 7;
  for (std::int64_t h = 1; h < p; ++h) {
    const double lhs = 1 / std::tan(kPi * static_cast<double>((p + 1) * h) / (2.0 * p));
    const double rhs = h % 2 ? 1 / std::tan(kPi / 2 + kPi * static_cast<double>(h) / (2.0 * p))
                             : 1 / std::tan(kPi * static_cast<double>(h / 2) / p);
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
  }
}

TEST_CASE("m3 closed-form sequences") {
  auto q2 = m3_seq(M3Family::CycloQuotient, 2);
  CHECK_THAT(q2.numeric().value, WithinAbs(-1.5 * kZeta3, q2.numeric().err + 1e-13));
  auto q7 = m3_seq(M3Family::CycloQuotient, 7).numeric();
  auto quad7 = mahler_k(p_n(7), 3);
  CHECK_THAT(q7.value, WithinAbs(quad7.value, 1e-7));
  auto lim = m3_seq_limit(M3Family::Quartic).numeric();
  CHECK_THAT(lim.value, WithinAbs(1.0377764969, 1e-10));
  CHECK(m3_seq_limit(M3Family::CycloQuotient) == ClosedFormValue{});
  CHECK(m3_seq_limit(M3Family::CycloTimesLinear) == ClosedFormValue::zeta3(Rational(-3)));
  CHECK_THROWS_AS(m3_seq(M3Family::Quartic, 4), std::domain_error);
  // The closed forms agree with the general trilinear expansion.
  for (std::int64_t p : {3, 5, 9}) {
    for (auto f : {M3Family::CycloQuotient, M3Family::CycloTimesLinear, M3Family::Quartic}) {
      auto a = m3_seq(f, p).numeric();
      auto b = m3_cyclo_product(m3_seq_product(f, p)).numeric();
      INFO(family_name(f) << " p=" << p);
      CHECK_THAT(a.value, WithinAbs(b.value, a.err + b.err + 1e-12));
    }
  }
}

TEST_CASE("Boyd-Lawton ladders") {
  auto tri = boyd_lawton_demo(SequenceFamily::M2Trinomial, {2, 5, 20, 200});
  CHECK(tri.deltas_decreasing());
  CHECK(tri.final_delta() <= 0.05);
  REQUIRE(tri.values.size() == tri.params.size());
  REQUIRE(tri.deltas.size() == tri.params.size());

  const std::vector<std::int64_t> ladder{11, 101, 401, 1601};
  auto quot = boyd_lawton_demo(SequenceFamily::M3Quotient, ladder);
  CHECK(quot.deltas_decreasing());
  auto prod = boyd_lawton_demo(SequenceFamily::M3Product, ladder);
  CHECK(prod.deltas_decreasing());
  CHECK_THAT(prod.values.back().value, WithinAbs(-3 * kZeta3, 0.05));
  auto quart = boyd_lawton_demo(SequenceFamily::M3Quartic, ladder);
  CHECK(quart.deltas_decreasing());
  for (auto* r : {&quot, &prod, &quart}) CHECK(r->final_delta() < r->deltas.front());

  CHECK(parse_sequence_family("cyclo_quotient") == SequenceFamily::M3Quotient);
  CHECK(parse_sequence_family("m3_quartic") == SequenceFamily::M3Quartic);
  CHECK_THROWS_AS(parse_sequence_family("bogus"), std::invalid_argument);
}

TEST_CASE("T sums") {
  for (std::int64_t a : {1, 2, 7, 100}) CHECK_THAT(t_sum(1, a).value, WithinAbs(1.0 / a, 1e-15));
  CHECK_THAT(t_sum(2, 2).value, WithinAbs(2.5, 1e-12));
  CHECK(t_sum(2, -5).value == t_sum(2, 5).value);
  CHECK_THAT(t_zero(2).value, WithinAbs(kPi * kPi / 3, 1e-12));
  double prev = 1e9;
  for (std::int64_t a : {1000, 10000, 100000}) {
    const double ratio = t_sum(2, a).value * a / (4 * std::log(static_cast<double>(a)));
    CHECK(std::abs(ratio - 1) < prev);
    prev = std::abs(ratio - 1);
  }
  CHECK(prev <= 0.25);
  CHECK_THROWS_AS(t_sum(5, 3), std::domain_error);
}

TEST_CASE("U sums") {
  for (std::int64_t n : {10, 100}) {
    auto u = u_sum(1, 1, n);
    CHECK_THAT(u.value, WithinAbs(kPi * kPi / (3.0 * n), u.err));
  }
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; j + k <= 4; ++k) CHECK(u_sum(j, k, 7).value > 0);
  const std::int64_t n = 10000;
  auto u21 = u_sum(2, 1, n);
  const double scaled = u21.value * n / std::log(static_cast<double>(n));
  CHECK_THAT(scaled, WithinAbs(8 * kZeta2, 0.3 * 8 * kZeta2));
  CHECK_THROWS_AS(u_sum(0, 0, 5), std::domain_error);
}

TEST_CASE("constants of the U asymptotics") {
  CHECK_THAT(c_jk(2, 1).value, WithinAbs(8 * kZeta2, 1e-12));
  CHECK_THAT(c_jk(1, 1).value, WithinAbs(2 * kZeta2, 1e-12));
  CHECK_THAT(c_jk(1, 2).value, WithinAbs(-8 * (-1.5 * kZeta3), 1e-10));
}

TEST_CASE("odd moments from the Fourier side") {
  auto two = odd_moment_fourier(1, 2);
  CHECK_THAT(two.value, WithinAbs(-1.5 * kZeta3, two.err));
  auto far = odd_moment_fourier(1, 1601);
  CHECK(far.value < 0);
  CHECK(std::abs(far.value) <= 0.05);
  CHECK(std::abs(two.value - far.value) > 1);
  CHECK_THROWS_AS(odd_moment_fourier(3, 5), std::domain_error);
}

TEST_CASE("property: three routes to m3 of (x^n-1)/(x-1)") {
  for (std::int64_t n : {2, 3, 5, 7}) {
    auto f = odd_moment_fourier(1, n);
    auto q = mahler_k(p_n(n), 3);
    auto c = m3_seq(M3Family::CycloQuotient, n).numeric();
    INFO("n=" << n);
    CHECK_THAT(f.value, WithinAbs(q.value, f.err + q.err));
    CHECK_THAT(f.value, WithinAbs(c.value, f.err + c.err));
    CHECK_THAT(q.value, WithinAbs(c.value, q.err + c.err + 1e-12));
  }
}

TEST_CASE("property: cotangent sums depend on r only mod p") {
  for (std::int64_t p : {5, 12, 97}) {
    for (std::int64_t r = 1; r < p; ++r) {
      if (std::gcd(r, p) != 1) continue;
      auto base = cot_weighted_sum(r, p, p, 20000);
      for (std::int64_t s : {r + p, r + 5 * p, r - p, r - 3 * p}) {
        auto v = cot_weighted_sum(s, p, p, 20000);
        INFO("r=" << r << " s=" << s << " p=" << p);
        CHECK(v.value == base.value);
        CHECK(v.err == base.err);
      }
    }
  }
}

TEST_CASE("property: T recursion agrees with direct summation") {
  const std::int64_t L = 20000;
  for (int m = 1; m <= 3; ++m)
    for (std::int64_t a : {0, 1, 2, 3, 5, 10, 27, 64, 100}) {
      if (m == 1 && a == 0) continue;
      auto r = t_sum(m, a), d = t_sum_direct(m, a, L);
      INFO("m=" << m << " alpha=" << a);
      CHECK_THAT(r.value, WithinAbs(d.value, r.err + d.err));
    }
}
