#pragma once

#include "mahler/numeric.hpp"
#include "mahler/rational.hpp"
#include "mahler/special.hpp"

#include <string>

namespace mahler {

// q0 + q_pi2 pi^2 + q_zeta3 zeta(3) + q_piL3 pi L(2,chi_-3) + q_piL4 pi L(2,chi_-4)
// plus a numeric residual for anything outside that basis.
struct ClosedFormValue {
  Rational q0 = 0, q_pi2 = 0, q_zeta3 = 0, q_piL3 = 0, q_piL4 = 0;
  SeriesValue residual{};

  bool exact() const { return residual.value == 0.0 && residual.err == 0.0; }

  ClosedFormValue& operator+=(const ClosedFormValue& o) {
    q0 += o.q0;
    q_pi2 += o.q_pi2;
    q_zeta3 += o.q_zeta3;
    q_piL3 += o.q_piL3;
    q_piL4 += o.q_piL4;
    if (!o.exact()) residual = exact() ? o.residual : residual + o.residual;
    return *this;
  }
  ClosedFormValue& operator*=(const Rational& c) {
    q0 *= c;
    q_pi2 *= c;
    q_zeta3 *= c;
    q_piL3 *= c;
    q_piL4 *= c;
    if (!exact()) residual = scale(to_double(c), residual);
    return *this;
  }
  friend ClosedFormValue operator+(ClosedFormValue a, const ClosedFormValue& b) { return a += b; }
  friend ClosedFormValue operator-(ClosedFormValue a, ClosedFormValue b) {
    b *= Rational(-1);
    return a += b;
  }
  friend ClosedFormValue operator*(const Rational& c, ClosedFormValue a) { return a *= c; }

  void add_residual(const SeriesValue& v) {
    residual = exact() ? v : residual + v;
    if (residual.value == 0.0 && residual.err == 0.0) residual.err = 1e-300;
  }

  static ClosedFormValue pi2(const Rational& q) { ClosedFormValue c; c.q_pi2 = q; return c; }
  static ClosedFormValue zeta3(const Rational& q) { ClosedFormValue c; c.q_zeta3 = q; return c; }
  static ClosedFormValue constant(const Rational& q) { ClosedFormValue c; c.q0 = q; return c; }
  static ClosedFormValue numeric(const SeriesValue& v) { ClosedFormValue c; c.add_residual(v); return c; }

  friend bool operator==(const ClosedFormValue& a, const ClosedFormValue& b) {
    return a.exact() && b.exact() && a.q0 == b.q0 && a.q_pi2 == b.q_pi2 && a.q_zeta3 == b.q_zeta3 &&
           a.q_piL3 == b.q_piL3 && a.q_piL4 == b.q_piL4;
  }

  // Numeric value of the whole expression with its error bound.
  SeriesValue numeric() const {
    static const SeriesValue z3 = zeta(3);
    static const SeriesValue L3 = scale(kPi, dirichlet_L2(-3));
    static const SeriesValue L4 = scale(kPi, dirichlet_L2(-4));
    const double pi2v = kPi * kPi;
    CompensatedSum s;
    double err = 0.0;
    auto term = [&](const Rational& q, double v, double e) {
      if (q == 0) return;
      double qd = to_double(q);
      s.add(qd * v);
      err += std::abs(qd) * e + kEps * std::abs(qd * v);
    };
    term(q0, 1.0, 0.0);
    term(q_pi2, pi2v, 2.0 * kEps * pi2v);
    term(q_zeta3, z3.value, z3.err);
    term(q_piL3, L3.value, L3.err);
    term(q_piL4, L4.value, L4.err);
    if (!exact()) {
      s.add(residual.value);
      err += residual.err;
    }
    return {s.value(), err + s.rounding(), residual.terms_used};
  }

  std::string to_string() const {
    std::string out;
    auto part = [&](const Rational& q, const char* name) {
      if (q == 0) return;
      if (!out.empty()) out += " + ";
      out += "(" + mahler::to_string(q) + ")" + name;
    };
    part(q0, "");
    part(q_pi2, "*pi^2");
    part(q_zeta3, "*zeta(3)");
    part(q_piL3, "*pi*L(2,chi_-3)");
    part(q_piL4, "*pi*L(2,chi_-4)");
    if (!exact()) {
      if (!out.empty()) out += " + ";
      out += std::to_string(residual.value);
    }
    return out.empty() ? "0" : out;
  }
};

}  // namespace mahler
