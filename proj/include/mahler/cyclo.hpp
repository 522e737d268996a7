#pragma once

#include "mahler/poly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace mahler {

// prod_d (x^d - 1)^{e_d}; exponents are nonzero and may be negative.
class CycloProduct {
 public:
  CycloProduct() = default;
  CycloProduct(std::initializer_list<std::pair<const std::int64_t, int>> init) {
    for (auto& [d, e] : init) add(d, e);
  }
  explicit CycloProduct(const std::map<std::int64_t, int>& m) {
    for (auto& [d, e] : m) add(d, e);
  }

  void add(std::int64_t d, int e) {
    if (d < 1) throw std::domain_error("cyclotomic product index must be >= 1");
    int& v = e_[d];
    v += e;
    if (v == 0) e_.erase(d);
  }
  const std::map<std::int64_t, int>& exponents() const { return e_; }
  bool empty() const { return e_.empty(); }

  // Multiplicity of phi_n in the product: sum of e_d over multiples d of n.
  std::map<std::int64_t, int> cyclotomic_multiplicities() const {
    std::map<std::int64_t, int> mult;
    for (auto& [d, e] : e_)
      for (std::int64_t n : divisors(d)) mult[n] += e;
    for (auto it = mult.begin(); it != mult.end();) it = it->second == 0 ? mult.erase(it) : std::next(it);
    return mult;
  }

  std::string to_string() const {
    std::string s;
    for (auto& [d, e] : e_) {
      if (!s.empty()) s += ',';
      s += std::to_string(d) + ':' + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const CycloProduct& a, const CycloProduct& b) { return a.e_ == b.e_; }

 private:
  std::map<std::int64_t, int> e_;
};

// "d:e,d:e", e.g. "1:-1,5:1" for (x^5-1)/(x-1).
inline CycloProduct parse_cyclo_product(const std::string& text) {
  CycloProduct c;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, i); };
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto read_int = [&](bool allow_sign) {
    skip();
    std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (digits == i || i - digits > 12) fail("expected integer");
    return std::stoll(text.substr(start, i - start));
  };
  skip();
  if (i == text.size()) fail("empty cyclotomic product");
  while (true) {
    long long d = read_int(false);
    skip();
    if (i >= text.size() || text[i] != ':') fail("expected ':'");
    ++i;
    long long e = read_int(true);
    if (d < 1) fail("index must be >= 1");
    if (e == 0) fail("exponent must be nonzero");
    c.add(d, static_cast<int>(e));
    skip();
    if (i == text.size()) break;
    if (text[i] != ',') fail("expected ','");
    ++i;
  }
  return c;
}

// Sorted multiset of rationals in [0,1), the arguments (in turns) of roots of
// unity.
class UnitArgSet {
 public:
  UnitArgSet() = default;
  explicit UnitArgSet(std::vector<Rational> v) : a_(std::move(v)) {
    for (auto& q : a_) q = frac_r(q);
    std::sort(a_.begin(), a_.end());
  }
  UnitArgSet(std::initializer_list<Rational> v) : UnitArgSet(std::vector<Rational>(v)) {}

  const std::vector<Rational>& args() const { return a_; }
  std::size_t size() const { return a_.size(); }
  friend bool operator==(const UnitArgSet& a, const UnitArgSet& b) { return a.a_ == b.a_; }

 private:
  std::vector<Rational> a_;
};

struct NegativeMultiplicity : std::domain_error {
  NegativeMultiplicity(std::int64_t n, int mult)
      : std::domain_error("cyclotomic factor phi_" + std::to_string(n) + " has net multiplicity " + std::to_string(mult)),
        index(n), multiplicity(mult) {}
  std::int64_t index;
  int multiplicity;
};

inline void require_polynomial(const CycloProduct& c) {
  for (auto& [n, m] : c.cyclotomic_multiplicities())
    if (m < 0) throw NegativeMultiplicity(n, m);
}

// Arguments j/n, gcd(j,n)=1, of every primitive n-th root with its multiplicity.
inline UnitArgSet cyclo_product_to_args(const CycloProduct& c) {
  require_polynomial(c);
  std::vector<Rational> out;
  for (auto& [n, m] : c.cyclotomic_multiplicities())
    for (std::int64_t j = 0; j < n; ++j) {
      if (std::gcd(j, n) != 1) continue;
      for (int r = 0; r < m; ++r) out.push_back(make_rational(j, n));
    }
  return UnitArgSet(std::move(out));
}

inline IntPoly to_poly(const CycloProduct& c) {
  require_polynomial(c);
  IntPoly num{1}, dnm{1};
  for (auto& [d, e] : c.exponents()) {
    IntPoly f = IntPoly::x_pow_minus_one(static_cast<std::size_t>(d));
    for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : dnm) = (e > 0 ? num : dnm) * f;
  }
  auto q = divide_exact(num, dnm);
  if (!q) throw std::logic_error("cyclotomic product is not a polynomial");
  return *q;
}

// Cyclotomic product equal to the cyclotomic part of a factor profile.
inline CycloProduct to_cyclo_product(const std::map<std::int64_t, int>& phi_mult) {
  CycloProduct c;
  for (auto& [n, m] : phi_mult)
    for (std::int64_t d : divisors(n)) {
      int mu = mobius(n / d);
      if (mu) c.add(d, mu * m);
    }
  return c;
}

}  // namespace mahler
