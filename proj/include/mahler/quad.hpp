#pragma once

#include "mahler/cyclo.hpp"
#include "mahler/numeric.hpp"
#include "mahler/parallel.hpp"
#include "mahler/poly.hpp"
#include "mahler/rational.hpp"
#include "mahler/roots.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

enum class Method { Quadrature, Roots, ClosedForm };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Quadrature: return "quadrature";
    case Method::Roots: return "roots";
    default: return "closed-form";
  }
}

struct Measurement {
  double value = 0.0;
  double err = 0.0;
  Method method = Method::Quadrature;
  int panels = 0;
  std::int64_t runtime_ms = 0;
  bool tol_met = true;
};

struct QuadConfig {
  double tol = 1e-9;
  int gl_order = 32;
  double grading_ratio = 0.5;
  double min_panel = 1e-60;
  int max_panels = 1 << 16;
  int workers = 1;
};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;
};

inline const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  if (n < 2 || n > 256) throw std::domain_error("gauss_legendre order must be in [2, 256]");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1) * z * p2 - (j - 1.0L) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1);
      long double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(n - 1 - i);
    g.x[a] = static_cast<double>(-z);
    g.x[b] = static_cast<double>(z);
    g.w[a] = g.w[b] = static_cast<double>(2 / ((1 - z * z) * pp * pp));
  }
  return cache.emplace(n, std::move(g)).first->second;
}

// log|P(e^{2 pi i theta})| as a sum of elementary pieces:
//   log|lead| + sum_d E_d log|2 sin(pi d theta)| + sum_roots mult * log|e^{2 pi i theta} - r|.
struct RootTerm {
  double rho = 1.0;                 // |r|
  double theta = 0.0;               // arg(r) / (2 pi) in [0, 1)
  std::optional<Rational> exact;    // exact argument for roots of unity
  int mult = 1;
  bool on_circle = true;
};

struct LogFactor {
  double log_lead = 0.0;
  std::map<std::int64_t, int> cyclo;  // E_d for (x^d - 1)^{E_d}
  std::vector<RootTerm> roots;
  bool vanishes = false;               // log|P| == 0 identically (P = +-x^k)
};

inline constexpr double kOnCircle = 1e-8;
inline constexpr double kNearCircle = 0.1;

inline LogFactor make_log_factor(const IntPoly& P) {
  if (P.is_zero()) throw std::domain_error("measure of the zero polynomial");
  LogFactor f;
  FactorProfile fp = factor_profile(P);
  const CycloProduct cp = to_cyclo_product(fp.cyclo_part);
  for (auto& [d, e] : cp.exponents()) f.cyclo[d] = e;
  const IntPoly& rem = fp.remainder;
  f.log_lead = std::log(std::abs(to_double(rem.lead())));
  if (rem.degree() >= 1) {
    for (auto& [F, mult] : squarefree_decomposition(rem)) {
      if (F.degree() < 1) continue;
      RootsResult rr = roots(F);
      for (auto& r : rr.roots) {
        RootTerm t;
        t.rho = std::abs(r.z);
        double th = std::arg(r.z) / (2.0 * kPi);
        t.theta = th < 0 ? th + 1.0 : th;
        if (t.theta >= 1.0) t.theta -= 1.0;
        t.mult = mult;
        t.on_circle = std::abs(1.0 - t.rho) < kOnCircle;
        if (t.on_circle) t.rho = 1.0;
        f.roots.push_back(t);
      }
    }
  }
  f.vanishes = f.cyclo.empty() && f.roots.empty() && f.log_lead == 0.0;
  return f;
}

// prod_j (x - e^{2 pi i alpha_j}) for exact rational alpha_j.
inline LogFactor make_unit_factor(const UnitArgSet& A) {
  LogFactor f;
  std::map<Rational, int> mult;
  for (auto& a : A.args()) ++mult[a];
  for (auto& [a, m] : mult) {
    RootTerm t;
    t.exact = a;
    t.theta = to_double(a);
    t.mult = m;
    f.roots.push_back(t);
  }
  f.vanishes = f.roots.empty();
  return f;
}

namespace detail {

struct Center {
  double pos = 0.0;
  std::optional<Rational> exact;
  bool hard = false;       // integrable log singularity here
  double soft_scale = 0.0; // distance of a nearby off-circle root, 0 if none
};

inline double log2sin(double x) { return std::log(2.0 * std::abs(std::sin(x))); }

// Per-center precomputation: offsets of every piece relative to the center.
struct FactorAtCenter {
  std::vector<double> cyclo_shift;  // frac(d c)
  std::vector<bool> cyclo_singular;
  std::vector<double> root_offset;  // c - theta_r
  std::vector<bool> root_own;
};

class Integrand {
 public:
  Integrand(std::vector<LogFactor> factors, std::vector<int> powers)
      : f_(std::move(factors)), pow_(std::move(powers)) {
    for (auto& f : f_) cyc_.emplace_back(f.cyclo.begin(), f.cyclo.end());
    build_centers();
  }

  const std::vector<Center>& centers() const { return centers_; }
  bool vanishes() const {
    for (auto& f : f_)
      if (f.vanishes) return true;
    return false;
  }

  // Integrand at theta = center + t.
  double operator()(std::size_t c, double t) const {
    const auto& pre = at_[c];
    double prod = 1.0;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const LogFactor& f = f_[i];
      const FactorAtCenter& fc = pre[i];
      double v = f.log_lead;
      for (std::size_t j = 0; j < cyc_[i].size(); ++j) {
        const auto d = static_cast<double>(cyc_[i][j].first);
        v += cyc_[i][j].second * log2sin(kPi * (fc.cyclo_shift[j] + d * t));
      }
      for (std::size_t j = 0; j < f.roots.size(); ++j) {
        const RootTerm& r = f.roots[j];
        double x = kPi * (fc.root_own[j] ? t : fc.root_offset[j] + t);
        if (r.on_circle) {
          v += r.mult * log2sin(x);
        } else {
          double s = std::sin(x);
          v += r.mult * 0.5 * std::log((1.0 - r.rho) * (1.0 - r.rho) + 4.0 * r.rho * s * s);
        }
      }
      prod *= pow_[i] == 1 ? v : std::pow(v, pow_[i]);
    }
    return prod;
  }

  // Bound on int_0^eps |integrand(c +- t)| dt at a hard center.
  double sliver_bound(std::size_t c, double eps) const {
    // Each factor: |L_i| <= mu_i u + G_i with u = log(1/t); the product is a
    // polynomial in u with nonnegative coefficients.
    std::vector<double> poly{1.0};
    for (std::size_t i = 0; i < f_.size(); ++i) {
      auto [mu, G] = local_bound(c, i);
      for (int p = 0; p < pow_[i]; ++p) {
        std::vector<double> nxt(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
          nxt[j] += poly[j] * G;
          nxt[j + 1] += poly[j] * mu;
        }
        poly.swap(nxt);
      }
    }
    // int_0^eps u^p dt = eps sum_{j<=p} p!/j! log(1/eps)^j
    const double L = std::log(1.0 / eps);
    double total = 0.0;
    for (std::size_t p = 0; p < poly.size(); ++p) {
      if (poly[p] == 0.0) continue;
      double term = 1.0, s = 0.0;  // p!/j! L^j accumulated from j = p down
      for (std::size_t j = p + 1; j-- > 0;) {
        s += term * std::pow(L, static_cast<double>(j));
        term *= static_cast<double>(j);
      }
      total += poly[p] * s;
    }
    return eps * total;
  }

 private:
  // (mu_i, G_i) at center c for factor i.
  std::pair<double, double> local_bound(std::size_t c, std::size_t i) const {
    const LogFactor& f = f_[i];
    const FactorAtCenter& fc = at_[c][i];
    double mu = 0.0, reg = f.log_lead;
    for (std::size_t j = 0; j < cyc_[i].size(); ++j) {
      auto [d, e] = cyc_[i][j];
      if (fc.cyclo_singular[j]) {
        mu += e;
        reg += e * std::log(static_cast<double>(d));
      } else {
        reg += e * log2sin(kPi * fc.cyclo_shift[j]);
      }
    }
    for (std::size_t j = 0; j < f.roots.size(); ++j) {
      const RootTerm& r = f.roots[j];
      if (fc.root_own[j]) {
        mu += r.mult;
        continue;
      }
      double s = std::sin(kPi * fc.root_offset[j]);
      reg += r.mult * 0.5 * std::log((1.0 - r.rho) * (1.0 - r.rho) + 4.0 * r.rho * s * s);
    }
    return {std::max(mu, 0.0), std::abs(reg) + 1.0};
  }

  void build_centers() {
    std::map<Rational, Center> exact;
    std::vector<Center> inexact;
    for (auto& f : f_) {
      for (auto& [n, m] : cyclo_multiplicities(f))
        if (m > 0)
          for (std::int64_t j = 0; j < n; ++j)
            if (std::gcd(j, n) == 1) {
              Rational a = make_rational(j, n);
              auto& c = exact[a];
              c.pos = to_double(a);
              c.exact = a;
              c.hard = true;
            }
      for (auto& r : f.roots) {
        if (r.exact) {
          auto& c = exact[*r.exact];
          c.pos = r.theta;
          c.exact = r.exact;
          c.hard = true;
        } else if (r.on_circle || std::abs(1.0 - r.rho) < kNearCircle) {
          Center c;
          c.pos = r.theta;
          c.hard = r.on_circle;
          c.soft_scale = r.on_circle ? 0.0 : std::abs(1.0 - r.rho);
          inexact.push_back(c);
        }
      }
    }
    for (auto& [a, c] : exact) centers_.push_back(c);
    // Merge coincident inexact roots (the same root arising in several factors).
    std::sort(inexact.begin(), inexact.end(), [](auto& x, auto& y) { return x.pos < y.pos; });
    for (auto& c : inexact) {
      bool merged = false;
      for (auto& e : centers_)
        if (!e.exact && std::abs(e.pos - c.pos) < 1e-12) {
          e.hard = e.hard || c.hard;
          e.soft_scale = e.hard ? 0.0 : std::min(e.soft_scale, c.soft_scale);
          merged = true;
          break;
        }
      if (!merged) centers_.push_back(c);
    }
    if (centers_.empty()) centers_.push_back(Center{});
    std::sort(centers_.begin(), centers_.end(), [](auto& x, auto& y) { return x.pos < y.pos; });

    at_.resize(centers_.size());
    for (std::size_t c = 0; c < centers_.size(); ++c) {
      const Center& C = centers_[c];
      for (std::size_t i = 0; i < f_.size(); ++i) {
        FactorAtCenter fc;
        for (auto& [d, e] : cyc_[i]) {
          double shift;
          bool sing = false;
          if (C.exact) {
            Rational s = frac_r(Rational(d) * *C.exact);
            shift = to_double(s);
            sing = s == 0;
          } else {
            double x = static_cast<double>(d) * C.pos;
            shift = x - std::floor(x);
          }
          fc.cyclo_shift.push_back(shift);
          fc.cyclo_singular.push_back(sing);
        }
        for (auto& r : f_[i].roots) {
          bool own = false;
          double off;
          if (C.exact && r.exact) {
            Rational s = frac_r(*C.exact - *r.exact);
            own = s == 0;
            off = to_double(s);
          } else {
            own = !C.exact && !r.exact && C.hard && r.on_circle && std::abs(C.pos - r.theta) < 1e-12;
            off = C.pos - r.theta;
          }
          fc.root_own.push_back(own);
          fc.root_offset.push_back(own ? 0.0 : off);
        }
        at_[c].push_back(std::move(fc));
      }
    }
  }

  static std::map<std::int64_t, int> cyclo_multiplicities(const LogFactor& f) {
    CycloProduct p;
    for (auto& [d, e] : f.cyclo) p.add(d, e);
    return p.cyclotomic_multiplicities();
  }

  std::vector<LogFactor> f_;
  std::vector<int> pow_;
  std::vector<std::vector<std::pair<std::int64_t, int>>> cyc_;
  std::vector<Center> centers_;
  std::vector<std::vector<FactorAtCenter>> at_;
};

struct Panel {
  std::size_t center = 0;
  double a = 0.0, b = 0.0;  // offsets from the center
  double value = 0.0, err = 0.0;
};

inline double gl_panel(const Integrand& f, const GaussLegendre& g, std::size_t c, double a, double b, double& absum) {
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  CompensatedSum s;
  for (std::size_t i = 0; i < g.x.size(); ++i) s.add(g.w[i] * f(c, m + h * g.x[i]));
  absum += std::abs(h) * s.abs_total();
  return h * s.value();
}

inline void eval_panel(const Integrand& f, const GaussLegendre& g, Panel& p) {
  double absum = 0.0;
  const double mid = 0.5 * (p.a + p.b);
  const double whole = gl_panel(f, g, p.center, p.a, p.b, absum);
  double dummy = 0.0;
  const double halves = gl_panel(f, g, p.center, p.a, mid, dummy) + gl_panel(f, g, p.center, mid, p.b, dummy);
  p.value = halves;
  p.err = std::abs(whole - halves) + 4.0 * kEps * absum;
  if (!std::isfinite(p.value)) throw std::runtime_error("non-finite integrand value in quadrature");
}

}  // namespace detail

// Integral over [0,1] of prod_i log^{powers_i}|P_i(e^{2 pi i theta})|.
inline Measurement integrate_log_product(std::vector<LogFactor> factors, std::vector<int> powers, const QuadConfig& cfg) {
  if (!(cfg.tol > 0) || !(cfg.grading_ratio > 0 && cfg.grading_ratio < 1) || cfg.max_panels < 1 || cfg.min_panel <= 0)
    throw std::invalid_argument("invalid quadrature configuration");
  auto t0 = std::chrono::steady_clock::now();
  Measurement out;
  out.method = Method::Quadrature;
  detail::Integrand F(std::move(factors), std::move(powers));
  if (F.vanishes()) {
    out.value = 0.0;
    out.err = std::numeric_limits<double>::min();
    out.panels = 1;
    return out;
  }
  const auto& G = gauss_legendre(cfg.gl_order);
  const auto& C = F.centers();
  const std::size_t nc = C.size();
  std::vector<detail::Panel> panels;
  double sliver = 0.0;
  const double scale = 1.0 / cfg.grading_ratio;
  const double sliver_target = 1e-3 * cfg.tol;

  // Half-gaps to the neighbouring centers on the circle.
  for (std::size_t c = 0; c < nc; ++c) {
    const double prev = c == 0 ? C[nc - 1].pos - 1.0 : C[c - 1].pos;
    const double next = c + 1 == nc ? C[0].pos + 1.0 : C[c + 1].pos;
    const double gaps[2] = {nc == 1 ? 0.5 : 0.5 * (C[c].pos - prev), nc == 1 ? 0.5 : 0.5 * (next - C[c].pos)};
    for (int side = 0; side < 2; ++side) {
      const double h = gaps[side];
      const double sgn = side == 0 ? -1.0 : 1.0;
      if (h <= 0.0) continue;
      double start = 0.0;
      if (C[c].hard) {
        double eps = std::min(sliver_target, 0.25 * h);
        for (int it = 0; it < 60; ++it) {
          double s = F.sliver_bound(c, eps);
          if (s <= sliver_target || eps <= cfg.min_panel) break;
          eps = std::max(cfg.min_panel, eps * std::min(0.5, sliver_target / s));
        }
        sliver += F.sliver_bound(c, eps);
        start = eps;
      } else if (C[c].soft_scale > 0.0) {
        start = std::min(h, 0.5 * C[c].soft_scale);
        panels.push_back({c, sgn > 0 ? 0.0 : -start, sgn > 0 ? start : 0.0});
      } else {
        start = 0.0;
      }
      if (start == 0.0) {
        panels.push_back({c, sgn > 0 ? 0.0 : -h, sgn > 0 ? h : 0.0});
        continue;
      }
      double t = start;
      while (t < h) {
        double u = std::min(h, t * scale);
        if (u > 0.7 * h) u = h;
        panels.push_back({c, sgn > 0 ? t : -u, sgn > 0 ? u : -t});
        t = u;
      }
    }
  }
  // An initial layout over budget is still evaluated; it is just never refined.

  parallel_for(panels.size(), cfg.workers, [&](std::size_t i) { detail::eval_panel(F, G, panels[i]); });

  auto total_err = [&] {
    CompensatedSum e;
    for (auto& p : panels) e.add(p.err);
    return e.value();
  };
  // Bisect the worst panels, in batches, until the budget is met.
  double err = total_err() + sliver;
  while (err > cfg.tol && static_cast<int>(panels.size()) < cfg.max_panels) {
    std::vector<std::size_t> order(panels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t batch = std::min<std::size_t>({64, order.size(), static_cast<std::size_t>(cfg.max_panels) - panels.size()});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(batch), order.end(),
                      [&](std::size_t x, std::size_t y) { return panels[x].err > panels[y].err || (panels[x].err == panels[y].err && x < y); });
    std::vector<std::size_t> fresh;
    for (std::size_t k = 0; k < batch; ++k) {
      detail::Panel& p = panels[order[k]];
      if (p.err <= cfg.tol * 1e-6) break;
      const double mid = 0.5 * (p.a + p.b);
      detail::Panel q{p.center, mid, p.b, 0, 0};
      p.b = mid;
      fresh.push_back(order[k]);
      panels.push_back(q);
      fresh.push_back(panels.size() - 1);
    }
    if (fresh.empty()) break;
    parallel_for(fresh.size(), cfg.workers, [&](std::size_t i) { detail::eval_panel(F, G, panels[fresh[i]]); });
    err = total_err() + sliver;
  }

  // Deterministic reduction: order by (center, offset).
  std::vector<std::size_t> order(panels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return panels[x].center != panels[y].center ? panels[x].center < panels[y].center : panels[x].a < panels[y].a;
  });
  CompensatedSum v;
  for (auto i : order) v.add(panels[i].value);
  out.value = v.value();
  out.err = err + v.rounding();
  out.panels = static_cast<int>(panels.size());
  out.tol_met = out.err <= cfg.tol;
  out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// m_k(P) = int_0^1 log^k|P(e^{2 pi i theta})| d theta.
inline Measurement mahler_k(const IntPoly& P, int k, const QuadConfig& cfg = {}) {
  if (k < 1 || k > 7) throw std::domain_error("mahler_k supports 1 <= k <= 7");
  return integrate_log_product({make_log_factor(P)}, {k}, cfg);
}

// m(P_1, ..., P_l) = int_0^1 prod_i log|P_i(e^{2 pi i theta})| d theta.
inline Measurement multiple_mahler(const std::vector<IntPoly>& Ps, const QuadConfig& cfg = {}) {
  if (Ps.empty()) throw std::domain_error("multiple_mahler needs at least one polynomial");
  // Identical inputs share one factor raised to a power.
  std::vector<IntPoly> uniq;
  std::vector<int> pw;
  for (auto& P : Ps) {
    auto it = std::find(uniq.begin(), uniq.end(), P);
    if (it == uniq.end()) {
      uniq.push_back(P);
      pw.push_back(1);
    } else {
      ++pw[static_cast<std::size_t>(it - uniq.begin())];
    }
  }
  std::vector<LogFactor> f;
  for (auto& P : uniq) f.push_back(make_log_factor(P));
  return integrate_log_product(std::move(f), std::move(pw), cfg);
}

// Multiple measure of polynomials with all roots at exact roots of unity,
// given by their arguments.
inline Measurement multiple_mahler_unit(const std::vector<UnitArgSet>& As, const QuadConfig& cfg = {}) {
  std::vector<LogFactor> f;
  std::vector<int> pw;
  for (auto& A : As) {
    f.push_back(make_unit_factor(A));
    pw.push_back(1);
  }
  return integrate_log_product(std::move(f), std::move(pw), cfg);
}

// Jensen: m(P) = log|a| + sum log+|r_j|, from certified roots of the
// noncyclotomic squarefree parts.
inline Measurement mahler_classical_roots(const IntPoly& P) {
  if (P.is_zero()) throw std::domain_error("measure of the zero polynomial");
  auto t0 = std::chrono::steady_clock::now();
  Measurement out;
  out.method = Method::Roots;
  FactorProfile fp = factor_profile(P);
  const IntPoly& rem = fp.remainder;
  CompensatedSum s;
  double err = 0.0;
  s.add(std::log(std::abs(to_double(rem.lead()))));
  if (rem.degree() >= 1) {
    for (auto& [F, mult] : squarefree_decomposition(rem)) {
      if (F.degree() < 1) continue;
      RootsResult rr = roots(F);
      if (!rr.converged) out.tol_met = false;
      for (auto& r : rr.roots) {
        const double a = std::abs(r.z);
        if (!r.certified) out.tol_met = false;
        // log+ is 1-Lipschitz in log|r|; the last Newton step bounds the
        // remaining root error for a simple root.
        const double dr = std::max(r.step, 1e-16 * a);
        if (a > 1.0) s.add(mult * std::log(a));
        if (a + dr > 1.0) err += mult * dr / std::max(a - dr, 1e-300);
      }
    }
  }
  out.value = s.value();
  out.err = err + s.rounding();
  out.panels = 1;
  out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace mahler
