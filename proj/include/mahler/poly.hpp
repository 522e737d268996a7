#pragma once

#include "mahler/rational.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mahler {

// Integer polynomial with coefficients in ascending degree order. Trailing
// zero coefficients are trimmed, so the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }
  IntPoly(std::initializer_list<long long> c) {
    for (long long v : c) c_.emplace_back(v);
    trim();
  }

  static IntPoly monomial(const BigInt& coeff, std::size_t k) {
    std::vector<BigInt> c(k + 1);
    c[k] = coeff;
    return IntPoly(std::move(c));
  }
  // x^n - 1
  static IntPoly x_pow_minus_one(std::size_t n) {
    std::vector<BigInt> c(n + 1);
    c[0] = -1;
    c[n] += 1;
    return IntPoly(std::move(c));
  }

  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& lead() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  BigInt height() const {
    BigInt h = 0;
    for (const auto& v : c_) h = std::max(h, BigInt(abs(v)));
    return h;
  }

  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(c));
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  IntPoly derivative() const {
    std::vector<BigInt> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long long>(i));
    return IntPoly(std::move(c));
  }
  IntPoly reversed() const {
    std::vector<BigInt> c(c_.rbegin(), c_.rend());
    return IntPoly(std::move(c));
  }
  // P(x^m)
  IntPoly compose_power(std::size_t m) const {
    if (c_.empty()) return {};
    std::vector<BigInt> c((c_.size() - 1) * m + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * m] = c_[i];
    return IntPoly(std::move(c));
  }
  // P(-x)
  IntPoly negate_x() const {
    IntPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  std::vector<double> to_double() const {
    std::vector<double> d;
    d.reserve(c_.size());
    for (const auto& v : c_) d.push_back(mahler::to_double(v));
    return d;
  }

  template <class T>
  std::complex<T> eval(std::complex<T> z) const {
    std::complex<T> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + static_cast<T>(it->template convert_to<double>());
    return acc;
  }

  // Comma-separated coefficient list, lowest degree first.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += c_[i].str();
    }
    return s;
  }

  // Sparse expression, highest degree first, e.g. "x^3+x+1".
  std::string to_expr() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const BigInt& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      BigInt a = abs(v);
      if (v < 0) s += '-';
      else if (!s.empty()) s += '+';
      if (i == 0 || a != 1) s += a.str();
      if (i >= 1) s += 'x';
      if (i >= 2) s += '^' + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  IntPoly parse_list() {
    std::vector<BigInt> c;
    skip_ws();
    while (true) {
      c.push_back(read_signed_int());
      skip_ws();
      if (at_end()) break;
      if (s_[i_] != ',') throw ParseError("expected ','", i_);
      ++i_;
    }
    return IntPoly(std::move(c));
  }

  IntPoly parse_expr() {
    std::map<std::size_t, BigInt> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", i_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      skip_ws();
      if (!at_end() && (s_[i_] == '+' || s_[i_] == '-')) {
        sign = s_[i_] == '-' ? -1 : 1;
        ++i_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", i_);
      }
      first = false;
      BigInt coef = 1;
      bool have_coef = false;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        coef = read_unsigned_int();
        have_coef = true;
        skip_ws();
        if (!at_end() && s_[i_] == '*') {
          ++i_;
          skip_ws();
          if (at_end() || !std::isalpha(static_cast<unsigned char>(s_[i_])))
            throw ParseError("expected variable after '*'", i_);
        }
      }
      std::size_t power = 0;
      if (!at_end() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
        char v = s_[i_];
        if (var_ == 0) var_ = v;
        else if (v != var_) throw ParseError("second variable name", i_);
        ++i_;
        power = 1;
        skip_ws();
        if (!at_end() && s_[i_] == '^') {
          ++i_;
          skip_ws();
          power = static_cast<std::size_t>(to_i64(read_unsigned_int()));
        }
      } else if (!have_coef) {
        throw ParseError("expected coefficient or variable", i_);
      }
      terms[power] += sign * coef;
      skip_ws();
    }
    std::size_t deg = terms.empty() ? 0 : terms.rbegin()->first;
    std::vector<BigInt> c(deg + 1);
    for (auto& [k, v] : terms) c[k] = v;
    return IntPoly(std::move(c));
  }

 private:
  bool at_end() const { return i_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  BigInt read_unsigned_int() {
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("expected integer", start);
    if (i_ - start > 4000) throw ParseError("integer literal too long", start);
    return BigInt(s_.substr(start, i_ - start));
  }
  BigInt read_signed_int() {
    skip_ws();
    bool neg = false;
    if (!at_end() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    BigInt v = read_unsigned_int();
    return neg ? BigInt(-v) : v;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  char var_ = 0;
};

}  // namespace detail

// Accepts "1,1,0,-1" (ascending coefficients) or an expression such as
// "x^3 - 2x + 1". Rejects the zero polynomial.
inline IntPoly parse_poly(const std::string& text) {
  bool has_alpha = std::any_of(text.begin(), text.end(), [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)); });
  detail::PolyParser p(text);
  IntPoly r = has_alpha ? p.parse_expr() : p.parse_list();
  if (r.is_zero()) throw ParseError("zero polynomial", 0);
  return r;
}

struct ArithmeticFunctions {
  int mobius;
  std::int64_t totient;
  int distinct_primes;
};

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline ArithmeticFunctions arithmetic_functions(std::int64_t n) {
  if (n < 1) throw std::domain_error("arithmetic functions need n >= 1");
  ArithmeticFunctions f{1, n, 0};
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) { m /= p; ++e; }
    f.distinct_primes++;
    f.totient = f.totient / p * (p - 1);
    f.mobius = e > 1 ? 0 : -f.mobius;
  }
  if (m > 1) {
    f.distinct_primes++;
    f.totient = f.totient / m * (m - 1);
    f.mobius = -f.mobius;
  }
  return f;
}

inline int mobius(std::int64_t n) { return arithmetic_functions(n).mobius; }
inline std::int64_t totient(std::int64_t n) { return arithmetic_functions(n).totient; }

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

// Quotient a / b when b divides a in Z[x]; nullopt otherwise.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const BigInt& lb = bc.back();
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int i = a.degree() - db; i >= 0; --i) {
    BigInt& top = r[static_cast<std::size_t>(i + db)];
    if (top == 0) continue;
    if (top % lb != 0) return std::nullopt;
    BigInt t = top / lb;
    q[static_cast<std::size_t>(i)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i + j)] -= t * bc[static_cast<std::size_t>(j)];
  }
  for (const auto& v : r)
    if (v != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& v : p.coeffs()) g = gcd(g, BigInt(abs(v)));
  return g;
}

// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.lead() < 0) g = -g;
  std::vector<BigInt> c = p.coeffs();
  for (auto& v : c) v /= g;
  return IntPoly(std::move(c));
}

// Pseudo-remainder of a by b.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const BigInt& lb = bc.back();
  int dr = static_cast<int>(r.size()) - 1;
  while (dr >= db && !r.empty()) {
    BigInt t = r[static_cast<std::size_t>(dr)];
    for (auto& v : r) v *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= t * bc[static_cast<std::size_t>(j)];
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return IntPoly(std::move(r));
}

// Primitive gcd in Z[x] (positive leading coefficient), by primitive PRS.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

// Square-free decomposition: pairs (F_i, i) with P = c * prod F_i^i and every
// F_i primitive and square-free.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  std::vector<std::pair<IntPoly, int>> out;
  if (p.degree() < 1) return out;
  IntPoly f = primitive_part(p);
  IntPoly c = poly_gcd(f, f.derivative());
  IntPoly w = *divide_exact(f, c);
  int i = 1;
  while (w.degree() > 0) {
    IntPoly y = poly_gcd(w, c);
    IntPoly z = *divide_exact(w, y);
    if (z.degree() > 0) out.emplace_back(primitive_part(z), i);
    ++i;
    w = y;
    c = *divide_exact(c, y);
  }
  return out;
}

// All cyclotomic polynomials phi_d for d | n, keyed by d. Each is x^d - 1
// divided exactly by the product of phi_e over proper divisors e of d.
inline std::map<std::int64_t, IntPoly> cyclotomic_family(std::int64_t n) {
  if (n < 1) throw std::domain_error("cyclotomic index must be >= 1");
  std::map<std::int64_t, IntPoly> phi;
  for (std::int64_t d : divisors(n)) {
    IntPoly q = IntPoly::x_pow_minus_one(static_cast<std::size_t>(d));
    for (auto& [e, pe] : phi) {
      if (d % e) continue;
      q = *divide_exact(q, pe);
    }
    phi.emplace(d, std::move(q));
  }
  return phi;
}

inline IntPoly cyclotomic(std::int64_t n) { return cyclotomic_family(n).at(n); }

// P equals its reversal up to a global sign.
inline bool is_reciprocal(const IntPoly& p) {
  if (p.is_zero()) return false;
  const auto& c = p.coeffs();
  bool plus = true, minus = true;
  for (std::size_t i = 0, j = c.size() - 1; i < c.size(); ++i, --j) {
    if (c[i] != c[j]) plus = false;
    if (c[i] != -c[j]) minus = false;
  }
  return plus || minus;
}

struct FactorProfile {
  std::map<std::int64_t, int> cyclo_part;  // n -> multiplicity of phi_n
  int monomial_power = 0;                  // power of x
  IntPoly remainder;                       // no cyclotomic factor, no factor x
};

// Totients phi(1..n) by sieve.
inline std::vector<std::int64_t> totient_table(std::int64_t n) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i) t[static_cast<std::size_t>(i)] = i;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (t[static_cast<std::size_t>(p)] != p) continue;
    for (std::int64_t m = p; m <= n; m += p) t[static_cast<std::size_t>(m)] -= t[static_cast<std::size_t>(m)] / p;
  }
  return t;
}

// Peels off x^k and every cyclotomic factor. Candidates phi_d satisfy
// phi(d) <= deg, hence d <= 2 deg^2. A numerical test at a primitive d-th root
// of unity rules out most d before any exact division.
inline FactorProfile factor_profile(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("factor_profile of the zero polynomial");
  FactorProfile fp;
  std::size_t k = 0;
  while (p.coeffs()[k] == 0) ++k;
  fp.monomial_power = static_cast<int>(k);
  IntPoly r(std::vector<BigInt>(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end()));
  const std::int64_t deg0 = r.degree();
  if (deg0 < 1) {
    fp.remainder = r;
    return fp;
  }
  const std::int64_t bound = 2 * deg0 * deg0;
  std::vector<double> c = r.to_double();
  auto tot = totient_table(bound);
  for (std::int64_t d = 1; d <= bound; ++d) {
    if (tot[static_cast<std::size_t>(d)] > r.degree()) continue;
    const double ang = 2.0 * 3.14159265358979323846 / static_cast<double>(d);
    std::optional<IntPoly> phi;
    while (r.degree() >= tot[static_cast<std::size_t>(d)]) {
      std::complex<double> z = std::polar(1.0, ang), acc = 0;
      double scale = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
        scale += std::abs(*it);
      }
      if (std::abs(acc) > 1e-6 * scale) break;
      if (!phi) phi = cyclotomic(d);
      auto q = divide_exact(r, *phi);
      if (!q) break;
      r = std::move(*q);
      c = r.to_double();
      fp.cyclo_part[d]++;
    }
  }
  fp.remainder = r;
  return fp;
}

inline IntPoly reassemble(const FactorProfile& fp) {
  IntPoly out = fp.remainder * IntPoly::monomial(1, static_cast<std::size_t>(fp.monomial_power));
  for (auto& [n, e] : fp.cyclo_part) {
    IntPoly phi = cyclotomic(n);
    for (int i = 0; i < e; ++i) out = out * phi;
  }
  return out;
}

}  // namespace mahler
