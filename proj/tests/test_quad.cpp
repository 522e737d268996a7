#include "generators.hpp"

#include "mahler/harness.hpp"
#include "mahler/quad.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace mahler;
using Catch::Matchers::WithinAbs;

namespace {
const double kZeta3 = 1.2020569031595942;
const char* kLehmer = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

std::vector<IntPoly> table_polys() {
  std::vector<IntPoly> out;
  for (auto& t : reciprocal_table()) out.push_back(parse_poly(t.poly));
  return out;
}
}  // namespace

TEST_CASE("higher Mahler measures by quadrature") {
  for (int k = 1; k <= 7; ++k) {
    auto m = mahler_k(parse_poly("x"), k);
    CHECK(m.value == 0.0);
  }
  auto a = mahler_k(parse_poly("x-1"), 2);
  CHECK(a.tol_met);
  CHECK_THAT(a.value, WithinAbs(kPi * kPi / 12, 1e-9));
  CHECK(a.err > 0);
  CHECK(a.panels >= 1);
  auto b = mahler_k(parse_poly("x^3+x+1"), 2);
  CHECK_THAT(b.value, WithinAbs(0.3275495729, 1e-8));
  CHECK_THAT(mahler_k(parse_poly("x-1"), 1).value, WithinAbs(0.0, 1e-9));
  CHECK_THAT(mahler_k(parse_poly("2x-1"), 1).value, WithinAbs(std::log(2.0), 1e-9));
  CHECK_THROWS_AS(mahler_k(IntPoly{}, 2), std::domain_error);
  CHECK_THROWS_AS(mahler_k(parse_poly("x-1"), 8), std::domain_error);
}

TEST_CASE("multiple Mahler measures by quadrature") {
  auto a = multiple_mahler({parse_poly("x-1"), parse_poly("x+1")});
  CHECK_THAT(a.value, WithinAbs(-kPi * kPi / 24, 1e-9));
  auto b = multiple_mahler({parse_poly("x^2-1"), parse_poly("x^3-1")});
  CHECK_THAT(b.value, WithinAbs(kPi * kPi / 72, 1e-9));
  auto c = multiple_mahler({parse_poly("x-1"), parse_poly("x^2-1"), parse_poly("x^2-1")});
  CHECK_THAT(c.value, WithinAbs(-0.75 * kZeta3, 1e-9));
  CHECK_THROWS_AS(multiple_mahler({}), std::domain_error);
}

TEST_CASE("Jensen evaluation from roots") {
  auto l = mahler_classical_roots(parse_poly(kLehmer));
  CHECK(l.method == Method::Roots);
  CHECK_THAT(l.value, WithinAbs(0.1623576120, 1e-9));
  CHECK_THAT(mahler_classical_roots(parse_poly("x^3-x-1")).value, WithinAbs(0.2811995743, 1e-9));
  auto cyc = mahler_classical_roots(cyclotomic(7) * cyclotomic(12) * cyclotomic(12) * parse_poly("x^5"));
  CHECK_THAT(cyc.value, WithinAbs(0.0, 1e-10));
  CHECK_THAT(mahler_classical_roots(parse_poly("3x^2+1")).value, WithinAbs(std::log(3.0), 1e-12));
}

TEST_CASE("a tolerance that cannot be met is reported") {
  QuadConfig q;
  q.tol = 1e-30;
  q.max_panels = 64;
  auto m = mahler_k(parse_poly("x^3+x+1"), 2, q);
  CHECK_FALSE(m.tol_met);
  CHECK(m.err > q.tol);
  CHECK_THAT(m.value, WithinAbs(0.3275495729, 1e-6));
}

TEST_CASE("property: quadrature matches roots on the table") {
  for (auto& P : table_polys()) {
    auto q = mahler_k(P, 1);
    auto r = mahler_classical_roots(P);
    INFO(P.to_expr());
    CHECK_THAT(q.value, WithinAbs(r.value, q.err + r.err + 1e-12));
  }
}

TEST_CASE("property: substitution x -> x^m leaves m_k unchanged") {
  const auto all = table_polys();
  const std::vector<IntPoly> five = {all[0], all[1], all[6], all[12], parse_poly("x^3+x+1")};
  const double tol = QuadConfig{}.tol;
  for (auto& P : five)
    for (std::size_t m : {2, 3})
      for (int k : {1, 2, 3}) {
        auto a = mahler_k(P, k), b = mahler_k(P.compose_power(m), k);
        INFO(P.to_expr() << " m=" << m << " k=" << k);
        CHECK(std::abs(a.value - b.value) <= 2 * tol);
      }
}

TEST_CASE("property: reversal leaves m_k unchanged") {
  gen::Rng rng(401);
  const double tol = QuadConfig{}.tol;
  for (int i = 0; i < 20; ++i) {
    IntPoly P = gen::poly(rng, 10, 4);
    const int k = gen::uniform(rng, 1, 4);
    auto a = mahler_k(P, k), b = mahler_k(P.reversed(), k);
    INFO(P.to_expr() << " k=" << k);
    CHECK(std::abs(a.value - b.value) <= 2 * tol);
  }
}

TEST_CASE("property: m_2 is bilinear in products") {
  gen::Rng rng(402);
  const double tol = QuadConfig{}.tol;
  for (int i = 0; i < 20; ++i) {
    IntPoly P = gen::poly(rng, 6, 3), Q = gen::poly(rng, 6, 3);
    if (gen::uniform(rng, 0, 1)) Q = Q * cyclotomic(gen::uniform(rng, 1, 6));
    auto pq = mahler_k(P * Q, 2), p = mahler_k(P, 2), q = mahler_k(Q, 2);
    auto mix = multiple_mahler({P, Q});
    INFO(P.to_expr() << " | " << Q.to_expr());
    CHECK(std::abs(pq.value - (p.value + 2 * mix.value + q.value)) <= 3 * tol);
  }
}

TEST_CASE("property: even moments dominate powers of lower ones") {
  gen::Rng rng(403);
  const double tol = QuadConfig{}.tol;
  auto corpus = table_polys();
  for (int i = 0; i < 20; ++i) corpus.push_back(gen::poly(rng, 12, 5));
  for (auto& P : corpus) {
    auto m1 = mahler_k(P, 1), m2 = mahler_k(P, 2), m4 = mahler_k(P, 4);
    INFO(P.to_expr());
    CHECK(m4.value >= m2.value * m2.value - 4 * tol);
    CHECK(m2.value >= m1.value * m1.value - 3 * tol);
  }
}

TEST_CASE("property: results do not depend on the worker count") {
  gen::Rng rng(404);
  for (int i = 0; i < 8; ++i) {
    IntPoly P = gen::poly(rng, 14, 3) * cyclotomic(gen::uniform(rng, 1, 20));
    const int k = gen::uniform(rng, 1, 4);
    QuadConfig one, four;
    four.workers = 4;
    auto a = mahler_k(P, k, one), b = mahler_k(P, k, four);
    INFO(P.to_expr());
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
    CHECK(a.panels == b.panels);
  }
}
