#pragma once

#include "mahler/numeric.hpp"
#include "mahler/poly.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace mahler {

struct Root {
  std::complex<double> z;
  double residual = 0.0;   // |P(z)|
  double step = 0.0;       // size of the last Newton correction
  bool certified = false;  // |P(z)| <= tol (1+|z|)^deg H(P)
};

struct RootsResult {
  std::vector<Root> roots;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

// P(z) and P'(z) in extended precision.
inline void horner_ext(const std::vector<double>& c, std::complex<long double> z, std::complex<long double>& p,
                       std::complex<long double>& dp) {
  p = 0;
  dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + static_cast<long double>(*it);
  }
}

inline void horner(const std::vector<double>& c, std::complex<double> z, std::complex<double>& p,
                   std::complex<double>& dp) {
  p = 0;
  dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace detail

// Simultaneous Aberth-Ehrlich iteration from a perturbed circle, without
// deflation, followed by one Newton step in extended precision per root.
inline RootsResult roots(const IntPoly& P, double tol = 1e-14, int max_iter = 200) {
  if (P.is_zero()) throw std::domain_error("roots of the zero polynomial");
  RootsResult res;
  const int n = P.degree();
  if (n < 1) {
    res.converged = true;
    return res;
  }
  const std::vector<double> c = P.to_double();
  const double lead = c.back();

  // Cauchy-type radius: geometric mean modulus from |a_0/a_n| plus a cap.
  double upper = 0.0;
  for (int i = 0; i < n; ++i) upper = std::max(upper, std::pow(std::abs(c[static_cast<std::size_t>(i)] / lead), 1.0 / (n - i)));
  double r0 = c[0] != 0.0 ? std::pow(std::abs(c[0] / lead), 1.0 / n) : 0.5 * upper;
  if (!(r0 > 0.0)) r0 = 1.0;
  r0 = std::min(r0, 2.0 * upper);

  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * kPi * k / n + 0.4 + 0.1 / (k + 1.0);
    z[static_cast<std::size_t>(k)] = std::polar(r0 * (1.0 + 0.01 * ((k * 7) % 5) / 5.0), ang);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  int it = 0;
  for (; it < max_iter; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      if (done[static_cast<std::size_t>(k)]) continue;
      std::complex<double> p, dp;
      detail::horner(c, zk, p, dp);
      if (p == 0.0) {
        done[static_cast<std::size_t>(k)] = true;
        continue;
      }
      std::complex<double> ratio = p / dp;
      std::complex<double> s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      std::complex<double> w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      zk -= w;
      if (std::abs(w) <= tol * std::max(1.0, std::abs(zk)))
        done[static_cast<std::size_t>(k)] = true;
      else
        all = false;
    }
    if (all) break;
  }
  res.converged = it < max_iter;
  res.iterations = it;

  const double height = to_double(P.height());
  for (int k = 0; k < n; ++k) {
    std::complex<long double> zl(z[static_cast<std::size_t>(k)].real(), z[static_cast<std::size_t>(k)].imag());
    std::complex<long double> p, dp;
    detail::horner_ext(c, zl, p, dp);
    std::complex<long double> step = dp != std::complex<long double>(0) ? p / dp : std::complex<long double>(0);
    zl -= step;
    detail::horner_ext(c, zl, p, dp);
    Root r;
    r.z = {static_cast<double>(zl.real()), static_cast<double>(zl.imag())};
    r.residual = static_cast<double>(std::abs(p));
    r.step = static_cast<double>(std::abs(step));
    double scale = std::pow(1.0 + std::abs(r.z), n) * height;
    r.certified = r.residual <= std::max(tol, 1e-15) * scale;
    res.roots.push_back(r);
  }
  return res;
}

}  // namespace mahler
