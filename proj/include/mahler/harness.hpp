#pragma once

#include "mahler/asymptotics.hpp"
#include "mahler/closed_form.hpp"
#include "mahler/cyclo.hpp"
#include "mahler/exact.hpp"
#include "mahler/parallel.hpp"
#include "mahler/poly.hpp"
#include "mahler/quad.hpp"
#include "mahler/special.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

using Json = nlohmann::json;

enum class OutputFormat { Json, Csv, Text };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown output format: " + s);
}

struct RunConfig {
  double tol = 1e-9;
  std::int64_t h_max = 1000000;
  std::int64_t L = 0;  // 0 picks the truncation per n
  int workers = 1;
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 20240611;

  QuadConfig quad() const {
    QuadConfig q;
    q.tol = tol;
    q.workers = workers;
    return q;
  }
  void validate() const {
    if (!(tol > 0) || h_max < 1 || L < 0 || workers < 1) throw std::invalid_argument("invalid run configuration");
  }
};

// ---- number formatting ----------------------------------------------------

// Rounds to 12 significant digits so emitted JSON is stable across runs.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json closed_form_json(const ClosedFormValue& c) {
  Json j;
  j["q0"] = to_string(c.q0);
  j["q_pi2"] = to_string(c.q_pi2);
  j["q_zeta3"] = to_string(c.q_zeta3);
  j["q_piL3"] = to_string(c.q_piL3);
  j["q_piL4"] = to_string(c.q_piL4);
  j["residual"] = round12(c.exact() ? 0.0 : c.residual.value);
  j["residual_err"] = round12(c.exact() ? 0.0 : c.residual.err);
  j["expression"] = c.to_string();
  return j;
}

inline Json result_json(const std::string& input, const std::string& method, double value, double err,
                        const ClosedFormValue* cf, std::int64_t runtime_ms) {
  Json j;
  j["input"] = input;
  j["method"] = method;
  j["value"] = round12(value);
  j["err"] = round12(err);
  j["closed_form"] = cf ? closed_form_json(*cf) : Json(nullptr);
  j["runtime_ms"] = runtime_ms;
  return j;
}

inline Json measurement_json(const std::string& input, const Measurement& m) {
  Json j = result_json(input, method_name(m.method), m.value, m.err, nullptr, m.runtime_ms);
  j["panels"] = m.panels;
  j["tol_met"] = m.tol_met;
  return j;
}

inline Json closed_result_json(const std::string& input, const ClosedFormValue& c, std::int64_t runtime_ms) {
  SeriesValue v = c.numeric();
  return result_json(input, "closed-form", v.value, v.err, &c, runtime_ms);
}

// Canonical serialization used by every emitter: sorted keys, two-space indent.
inline std::string dump_json(const Json& j) { return j.dump(2); }

// CSV of the scalar fields of a flat JSON object or an array of them;
// nested objects are flattened with '.'.
inline void flatten_json(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten_json(*it, key, out);
    } else if (it->is_array()) {
      // Scalar arrays join with ';'; arrays of objects are left to the caller.
      if (std::any_of(it->begin(), it->end(), [](const Json& x) { return x.is_structured(); })) continue;
      std::string joined;
      for (auto& x : *it) joined += (joined.empty() ? "" : ";") + (x.is_string() ? x.get<std::string>() : x.dump());
      out.emplace_back(key, joined);
    } else if (it->is_string()) {
      out.emplace_back(key, it->get<std::string>());
    } else if (it->is_null()) {
      out.emplace_back(key, "");
    } else {
      out.emplace_back(key, it->dump());
    }
  }
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

inline std::string to_csv(const Json& rows) {
  std::vector<Json> list;
  if (rows.is_array()) list.assign(rows.begin(), rows.end());
  else list.push_back(rows);
  std::vector<std::string> header;
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (auto& r : list) {
    flat.emplace_back();
    flatten_json(r, "", flat.back());
    for (auto& [k, v] : flat.back())
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i]);
  os << "\n";
  for (auto& f : flat) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto it = std::find_if(f.begin(), f.end(), [&](auto& kv) { return kv.first == header[i]; });
      os << (i ? "," : "") << (it == f.end() ? "" : csv_escape(it->second));
    }
    os << "\n";
  }
  return os.str();
}

// ---- reciprocal table -----------------------------------------------------

struct TableEntry {
  const char* poly;
  const char* m1;
  const char* m2;
};

// Reciprocal noncyclotomic polynomials of degree <= 14 with m(P) < 0.25,
// with their m and m_2 to ten decimals.
inline const std::vector<TableEntry>& reciprocal_table() {
  static const std::vector<TableEntry> rows = {
      {"x^8+x^5-x^4+x^3+1", "0.2473585132", "1.0980813745"},
      {"x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "0.1623576120", "1.7447964556"},
      {"x^10-x^6+x^5-x^4+1", "0.1958888214", "1.2863292447"},
      {"x^10+x^7+x^5+x^3+1", "0.2073323581", "1.2320444893"},
      {"x^10-x^8+x^5-x^2+1", "0.2320881973", "1.1704950485"},
      {"x^10+x^8+x^7+x^5+x^3+x^2+1", "0.2368364616", "1.1914083866"},
      {"x^10+x^9-x^5+x+1", "0.2496548880", "1.0309287773"},
      {"x^12+x^11+x^10-x^8-x^7-x^6-x^5-x^4+x^2+x+1", "0.2052121880", "1.4738375004"},
      {"x^12+x^11+x^10+x^9-x^6+x^3+x^2+x+1", "0.2156970336", "1.5143823478"},
      {"x^12+x^11-x^7-x^6-x^5+x+1", "0.2239804947", "1.2059443050"},
      {"x^12+x^10+x^7-x^6+x^5+x^2+1", "0.2345928411", "1.2434560052"},
      {"x^12+x^10+x^9+x^8+2x^7+x^6+2x^5+x^4+x^3+x^2+1", "0.2412336268", "1.6324129051"},
      {"x^14+x^11-x^10-x^7-x^4+x^3+1", "0.1823436598", "1.3885013172"},
      {"x^14-x^12+x^7-x^2+1", "0.1844998024", "1.3845721865"},
      {"x^14-x^12+x^11-x^9+x^7-x^5+x^3-x^2+1", "0.2272100851", "1.4763006621"},
      {"x^14+x^11+x^10+x^9+x^8+x^7+x^6+x^5+x^4+x^3+1", "0.2351686174", "1.4352060397"},
      {"x^14+x^13-x^8-x^7-x^6+x+1", "0.2368858459", "1.2498299096"},
      {"x^14+x^13+x^12-x^9-x^8-x^7-x^6-x^5+x^2+x+1", "0.2453300143", "1.3362661982"},
      {"x^14+x^13-x^11-x^7-x^3+x+1", "0.2469561884", "1.3898540050"},
  };
  return rows;
}

inline constexpr double kTableTol = 5e-9;

struct TableRow {
  IntPoly poly;
  std::string m1_printed, m2_printed;
  Measurement m1_computed, m2_computed;

  double m1_delta() const { return std::abs(m1_computed.value - std::stod(m1_printed)); }
  double m2_delta() const { return std::abs(m2_computed.value - std::stod(m2_printed)); }
  bool ok(double tol = kTableTol) const {
    return m1_delta() <= tol && m2_delta() <= tol && m1_computed.err < 1e-8 && m2_computed.err < 1e-8;
  }
};

inline std::vector<TableRow> reproduce_table(const RunConfig& cfg = {}) {
  cfg.validate();
  const auto& rows = reciprocal_table();
  QuadConfig q = cfg.quad();
  q.workers = 1;
  std::vector<std::size_t> idx(rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return parallel_map(idx, cfg.workers, [&](std::size_t i) {
    TableRow r;
    r.poly = parse_poly(rows[i].poly);
    r.m1_printed = rows[i].m1;
    r.m2_printed = rows[i].m2;
    r.m1_computed = mahler_classical_roots(r.poly);
    r.m2_computed = mahler_k(r.poly, 2, q);
    return r;
  });
}

inline Json table_json(const std::vector<TableRow>& rows) {
  Json a = Json::array();
  for (auto& r : rows) {
    Json j;
    j["poly"] = r.poly.to_expr();
    j["m_printed"] = r.m1_printed;
    j["m2_printed"] = r.m2_printed;
    j["m"] = round12(r.m1_computed.value);
    j["m_err"] = round12(r.m1_computed.err);
    j["m2"] = round12(r.m2_computed.value);
    j["m2_err"] = round12(r.m2_computed.err);
    j["m_delta"] = round12(r.m1_delta());
    j["m2_delta"] = round12(r.m2_delta());
    j["ok"] = r.ok();
    a.push_back(j);
  }
  return a;
}

// ---- lower bounds ---------------------------------------------------------

struct BoundsEntry {
  IntPoly poly;
  bool reciprocal = false;
  Measurement m, m2, m4;
  std::vector<std::string> violations;
};

struct BoundsReport {
  std::vector<BoundsEntry> entries;
  double slack = 0.0;
  std::size_t violation_count() const {
    std::size_t n = 0;
    for (auto& e : entries) n += e.violations.size();
    return n;
  }
};

inline bool is_monomial(const IntPoly& P) {
  int nz = 0;
  for (auto& c : P.coeffs()) nz += c != 0;
  return nz <= 1;
}

// m_2 >= pi^2/12 (reciprocal) or pi^2/48 (otherwise), m_4 >= that bound
// squared, m_4 >= m_2^2, m_2 >= m^2 and m_4 >= m^4, each with 3 tol slack.
inline BoundsReport verify_bounds(const std::vector<IntPoly>& corpus, const RunConfig& cfg = {}) {
  cfg.validate();
  BoundsReport rep;
  rep.slack = 3.0 * cfg.tol;
  QuadConfig q = cfg.quad();
  q.workers = 1;
  rep.entries = parallel_map(corpus, cfg.workers, [&](const IntPoly& P) {
    if (P.is_zero() || is_monomial(P)) throw std::domain_error("bounds corpus must not contain monomials");
    BoundsEntry e;
    e.poly = P;
    e.reciprocal = is_reciprocal(P);
    e.m = mahler_classical_roots(P);
    e.m2 = mahler_k(P, 2, q);
    e.m4 = mahler_k(P, 4, q);
    const double s = rep.slack;
    const double b2 = kPi * kPi / (e.reciprocal ? 12.0 : 48.0);
    auto check = [&](bool ok, const std::string& what) {
      if (!ok) e.violations.push_back(what);
    };
    check(e.m2.value >= b2 - s, e.reciprocal ? "m2 >= pi^2/12" : "m2 >= pi^2/48");
    check(e.m4.value >= b2 * b2 - s, e.reciprocal ? "m4 >= (pi^2/12)^2" : "m4 >= (pi^2/48)^2");
    check(e.m4.value >= e.m2.value * e.m2.value - s, "m4 >= m2^2");
    check(e.m2.value >= e.m.value * e.m.value - s, "m2 >= m^2");
    check(e.m4.value >= std::pow(e.m.value, 4) - s, "m4 >= m^4");
    return e;
  });
  return rep;
}

inline Json bounds_json(const BoundsReport& rep) {
  Json j;
  j["slack"] = round12(rep.slack);
  j["violations"] = rep.violation_count();
  Json a = Json::array();
  for (auto& e : rep.entries) {
    Json r;
    r["poly"] = e.poly.to_expr();
    r["reciprocal"] = e.reciprocal;
    r["m"] = round12(e.m.value);
    r["m2"] = round12(e.m2.value);
    r["m4"] = round12(e.m4.value);
    r["violations"] = e.violations;
    a.push_back(r);
  }
  j["entries"] = a;
  return j;
}

// One polynomial per line; '#' starts a comment.
inline std::vector<IntPoly> read_corpus(std::istream& in) {
  std::vector<IntPoly> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(parse_poly(line.substr(b, e - b + 1)));
  }
  return out;
}

inline std::vector<IntPoly> read_corpus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open corpus file: " + path);
  return read_corpus(f);
}

// ---- random polynomials ---------------------------------------------------

// Random integer polynomial of exact degree in [1, deg_max], coefficients in
// [-height, height], nonzero constant term.
inline IntPoly random_poly(std::mt19937_64& rng, int deg_max, int height) {
  std::uniform_int_distribution<int> dd(1, deg_max), cd(-height, height), nz(1, height), sg(0, 1);
  const int d = dd(rng);
  std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
  for (auto& v : c) v = cd(rng);
  c[0] = BigInt(nz(rng)) * (sg(rng) ? 1 : -1);
  c[static_cast<std::size_t>(d)] = BigInt(nz(rng)) * (sg(rng) ? 1 : -1);
  return IntPoly(std::move(c));
}

inline IntPoly random_reciprocal(std::mt19937_64& rng, int deg_max, int height) {
  std::uniform_int_distribution<int> dd(1, deg_max), cd(-height, height), nz(1, height), sg(0, 1);
  const int d = dd(rng);
  const int eps = sg(rng) ? 1 : -1;
  std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
  for (int i = 0; 2 * i <= d; ++i) {
    BigInt v = i == 0 ? BigInt(nz(rng)) : BigInt(cd(rng));
    if (2 * i == d && eps < 0) v = 0;
    c[static_cast<std::size_t>(i)] = v;
    c[static_cast<std::size_t>(d - i)] = eps * v;
  }
  return IntPoly(std::move(c));
}

inline IntPoly random_nonreciprocal(std::mt19937_64& rng, int deg_max, int height) {
  for (;;) {
    IntPoly P = random_poly(rng, deg_max, height);
    if (!is_reciprocal(P)) return P;
  }
}

// ---- small search ---------------------------------------------------------

struct SearchEntry {
  IntPoly poly;
  Measurement m, m2;
  double gap() const { return m2.value - m.value * m.value; }
};

struct SearchResult {
  std::vector<SearchEntry> entries;  // ascending m, ties by coefficients
  std::size_t enumerated = 0;
  std::size_t cyclotomic = 0;
  bool complete = true;
};

// Smallest coefficient vector among P and the monic normalisation of P(-x).
// Reversal maps a (anti)reciprocal monic polynomial to plus or minus itself,
// so the orbit has at most two members.
inline IntPoly canonical_orbit(const IntPoly& P) {
  IntPoly Q = P.negate_x();
  if (Q.lead() < 0) Q = -Q;
  IntPoly R = P.reversed();
  if (R.lead() < 0) R = -R;
  IntPoly best = P;
  for (const IntPoly* c : {&Q, &R}) {
    if (std::lexicographical_compare(c->coeffs().begin(), c->coeffs().end(), best.coeffs().begin(), best.coeffs().end()))
      best = *c;
  }
  return best;
}

// Monic reciprocal and antireciprocal polynomials of degree 1..deg_max with
// coefficients in [-height, height], up to x -> -x, without the products of
// cyclotomic polynomials. Ranked by m.
inline SearchResult search_small(int deg_max, int height, const RunConfig& cfg = {}, std::size_t budget = 2000000) {
  cfg.validate();
  if (deg_max < 1 || deg_max > 12 || height < 1 || height > 2) throw std::domain_error("search needs 1 <= deg <= 12, 1 <= height <= 2");
  SearchResult res;
  std::set<std::vector<BigInt>> seen;
  std::vector<IntPoly> todo;
  for (int d = 1; d <= deg_max && res.complete; ++d) {
    for (int eps : {1, -1}) {
      // Free coefficients a_1 .. a_{floor(d/2)}; the middle one is 0 when
      // antireciprocal of even degree.
      const int half = d / 2;
      std::vector<int> free_idx;
      for (int i = 1; i <= half; ++i)
        if (!(eps < 0 && 2 * i == d)) free_idx.push_back(i);
      std::vector<int> a(free_idx.size(), -height);
      for (;;) {
        if (++res.enumerated > budget) {
          res.complete = false;
          break;
        }
        std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
        c[static_cast<std::size_t>(d)] = 1;
        c[0] = eps;
        for (std::size_t t = 0; t < free_idx.size(); ++t) {
          const int i = free_idx[t];
          c[static_cast<std::size_t>(i)] = a[t];
          c[static_cast<std::size_t>(d - i)] = eps * a[t];
        }
        IntPoly P = canonical_orbit(IntPoly(std::move(c)));
        if (seen.insert(P.coeffs()).second) {
          if (factor_profile(P).remainder.degree() < 1) ++res.cyclotomic;
          else todo.push_back(P);
        }
        std::size_t t = 0;
        while (t < a.size() && a[t] == height) a[t++] = -height;
        if (t == a.size()) break;
        ++a[t];
      }
    }
  }
  QuadConfig q = cfg.quad();
  q.workers = 1;
  res.entries = parallel_map(todo, cfg.workers, [&](const IntPoly& P) {
    SearchEntry e;
    e.poly = P;
    e.m = mahler_classical_roots(P);
    e.m2 = mahler_k(P, 2, q);
    return e;
  });
  std::sort(res.entries.begin(), res.entries.end(), [](const SearchEntry& x, const SearchEntry& y) {
    if (x.m.value != y.m.value) return x.m.value < y.m.value;
    return std::lexicographical_compare(x.poly.coeffs().begin(), x.poly.coeffs().end(), y.poly.coeffs().begin(),
                                        y.poly.coeffs().end());
  });
  return res;
}

inline Json search_json(const SearchResult& r, std::size_t limit = 0) {
  Json j;
  j["enumerated"] = r.enumerated;
  j["cyclotomic_dropped"] = r.cyclotomic;
  j["survivors"] = r.entries.size();
  j["complete"] = r.complete;
  Json a = Json::array();
  for (std::size_t i = 0; i < r.entries.size() && (limit == 0 || i < limit); ++i) {
    auto& e = r.entries[i];
    Json x;
    x["poly"] = e.poly.to_expr();
    x["m"] = round12(e.m.value);
    x["m2"] = round12(e.m2.value);
    x["m2_minus_m_sq"] = round12(e.gap());
    a.push_back(x);
  }
  j["ranked"] = a;
  return j;
}

// ---- closed forms for a single polynomial --------------------------------

// m_k(P) in the constant basis when P is +-x^j times a product of cyclotomic
// polynomials: k = 1 is 0, k = 2 and 3 go through the root arguments, and
// k >= 4 is known for x^n - 1 (the same value for every n) and x + 1.
inline std::optional<ClosedFormValue> closed_form_measure(const IntPoly& P, int k) {
  if (k < 1 || k > 7) throw std::domain_error("closed-form measure supports 1 <= k <= 7");
  FactorProfile fp = factor_profile(P);
  if (fp.remainder.degree() != 0 || abs(fp.remainder.lead()) != 1) return std::nullopt;
  if (fp.cyclo_part.empty()) return ClosedFormValue{};
  if (k == 1) return ClosedFormValue{};
  const UnitArgSet A = cyclo_product_to_args(to_cyclo_product(fp.cyclo_part));
  if (k == 2) return m2_unit_poly(A);
  if (k == 3) return m3_unit_poly(A);
  const std::int64_t n = static_cast<std::int64_t>(A.size());
  bool full = true;
  for (std::int64_t j = 0; j < n && full; ++j) full = A.args()[static_cast<std::size_t>(j)] == Rational(j, n);
  const bool plus_one = n == 1 && A.args()[0] == Rational(1, 2);
  if (full || plus_one) return m_l_one_minus_x(k);
  return std::nullopt;
}

// ---- standard corpus for the bound checks ---------------------------------

// The table, 50 random reciprocal and 50 random nonreciprocal polynomials
// (degree <= 12, height <= 5), and the first 100 survivors of the degree 10,
// height 1 search.
inline std::vector<IntPoly> standard_bounds_corpus(const RunConfig& cfg = {}, const SearchResult* search = nullptr) {
  std::vector<IntPoly> out;
  for (auto& t : reciprocal_table()) out.push_back(parse_poly(t.poly));
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 50; ++i) out.push_back(random_reciprocal(rng, 12, 5));
  for (int i = 0; i < 50; ++i) out.push_back(random_nonreciprocal(rng, 12, 5));
  SearchResult local;
  if (!search) {
    local = search_small(10, 1, cfg);
    search = &local;
  }
  for (std::size_t i = 0; i < search->entries.size() && i < 100; ++i) out.push_back(search->entries[i].poly);
  return out;
}

inline Json sequence_json(const SequenceReport& r) {
  Json j;
  j["family"] = r.family;
  j["params"] = r.params;
  Json v = Json::array(), e = Json::array();
  for (auto& m : r.values) {
    v.push_back(round12(m.value));
    e.push_back(round12(m.err));
  }
  j["values"] = v;
  j["errs"] = e;
  Json d = Json::array();
  for (double x : r.deltas) d.push_back(round12(x));
  j["deltas"] = d;
  j["limit_target"] = r.limit_target ? closed_form_json(*r.limit_target) : Json(nullptr);
  j["decreasing"] = r.deltas_decreasing();
  return j;
}

// ---- selftest -------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast invariant checks across all modules.
inline std::vector<CheckResult> selftest(const RunConfig& cfg = {}) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<std::string()>& fn) {
    CheckResult r{name, false, ""};
    try {
      r.detail = fn();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(r);
  };
  std::mt19937_64 rng(cfg.seed);
  const QuadConfig q = cfg.quad();

  run("poly: parse/print round trip on the table", [&]() -> std::string {
    for (auto& t : reciprocal_table()) {
      IntPoly P = parse_poly(t.poly);
      if (parse_poly(P.to_string()) != P || parse_poly(P.to_expr()) != P) return t.poly;
    }
    return {};
  });
  run("poly: cyclotomic degree is the totient for n <= 200", [&]() -> std::string {
    for (std::int64_t n = 1; n <= 200; ++n)
      if (cyclotomic(n).degree() != totient(n)) return "n=" + std::to_string(n);
    return {};
  });
  run("poly: factor profile reassembles", [&]() -> std::string {
    for (int i = 0; i < 100; ++i) {
      IntPoly P = random_poly(rng, 8, 5);
      std::uniform_int_distribution<int> nd(1, 12);
      for (int j = 0; j < 2; ++j) P = P * cyclotomic(nd(rng));
      if (reassemble(factor_profile(P)) != P) return P.to_expr();
    }
    return {};
  });
  run("exact: divisor-sum reassembly for m, n <= 40", [&]() -> std::string {
    for (std::int64_t m = 1; m <= 40; ++m)
      for (std::int64_t n = 1; n <= 40; ++n) {
        ClosedFormValue s;
        for (auto d1 : divisors(m))
          for (auto d2 : divisors(n)) s += m2_pair_cyclo(d1, d2);
        if (!(s == m2_pair_xn(m, n))) return std::to_string(m) + "," + std::to_string(n);
      }
    return {};
  });
  run("exact: corrected product formula matches the divisor sum for m, n <= 60", [&]() -> std::string {
    for (std::int64_t m = 1; m <= 60; ++m)
      for (std::int64_t n = 1; n <= 60; ++n)
        if (!compare_cyclo_pair(m, n).corrected_agrees) return std::to_string(m) + "," + std::to_string(n);
    return {};
  });
  run("exact: S(a,b) closed form for coprime a, b <= 30", [&]() -> std::string {
    for (std::int64_t a = 1; a <= 30; ++a)
      for (std::int64_t b = 1; b <= 30; ++b)
        if (std::gcd(a, b) == 1 && s_ab(a, b) != s_ab_bruteforce(a, b)) return std::to_string(a) + "," + std::to_string(b);
    return {};
  });
  run("exact: m3 of x^a-1, x^b-1, x^c-1 is symmetric", [&]() -> std::string {
    for (auto [a, b, c] : std::vector<std::array<std::int64_t, 3>>{{2, 3, 5}, {4, 6, 9}, {1, 4, 7}}) {
      std::array<std::int64_t, 3> v{a, b, c};
      const double ref = m3_triple_xn(a, b, c).numeric().value;
      std::sort(v.begin(), v.end());
      do {
        const SeriesValue s = m3_triple_xn(v[0], v[1], v[2]).numeric();
        if (std::abs(s.value - ref) > 2 * s.err + 1e-12) return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
      } while (std::next_permutation(v.begin(), v.end()));
    }
    return {};
  });
  run("special: Clausen parity", [&]() -> std::string {
    std::uniform_int_distribution<int> qd(2, 60);
    for (int i = 0; i < 40; ++i) {
      const int qq = qd(rng);
      std::uniform_int_distribution<int> pd(1, qq - 1);
      const Rational g(pd(rng), qq);
      for (int ell = 2; ell <= 4; ++ell) {
        auto c1 = clausen(ell, TrigKind::Cos, g), c2 = clausen(ell, TrigKind::Cos, 1 - g);
        auto s1 = clausen(ell, TrigKind::Sin, g), s2 = clausen(ell, TrigKind::Sin, 1 - g);
        if (std::abs(c1.value - c2.value) > 2 * (c1.err + c2.err) + 1e-14) return "C" + std::to_string(ell) + " at " + to_string(g);
        if (std::abs(s1.value + s2.value) > 2 * (s1.err + s2.err) + 1e-14) return "S" + std::to_string(ell) + " at " + to_string(g);
      }
    }
    return {};
  });
  run("quad: m_2(x-1) = pi^2/12 and Lehmer m", [&]() -> std::string {
    auto a = mahler_k(parse_poly("x-1"), 2, q);
    if (std::abs(a.value - kPi * kPi / 12) > a.err + 1e-12) return "m2(x-1)=" + fmt12(a.value);
    IntPoly leh = parse_poly(reciprocal_table()[1].poly);
    auto b = mahler_k(leh, 1, q), c = mahler_classical_roots(leh);
    if (std::abs(b.value - c.value) > b.err + c.err + 1e-12) return "lehmer " + fmt12(b.value) + " vs " + fmt12(c.value);
    return {};
  });
  run("quad: m_2 of random cyclotomic products matches the exact value", [&]() -> std::string {
    std::uniform_int_distribution<int> dd(1, 8), ed(-1, 2);
    for (int i = 0; i < 5; ++i) {
      CycloProduct C;
      for (int j = 0; j < 3; ++j) C.add(dd(rng), ed(rng));
      try {
        require_polynomial(C);
      } catch (const NegativeMultiplicity&) {
        continue;
      }
      if (C.exponents().empty()) continue;
      IntPoly P = to_poly(C);
      if (P.degree() < 1) continue;
      auto m = mahler_k(P, 2, q);
      const double ex = m2_cyclo_product(C).numeric().value;
      if (std::abs(m.value - ex) > m.err + 1e-9) return C.to_string();
    }
    return {};
  });
  run("asymptotics: odd moment from the Fourier side at n = 3", [&]() -> std::string {
    auto f = odd_moment_fourier(1, 3, 200000);
    auto ex = m3_seq(M3Family::CycloQuotient, 3).numeric();
    if (std::abs(f.value - ex.value) > f.err + ex.err) return fmt12(f.value) + " vs " + fmt12(ex.value);
    return {};
  });
  run("asymptotics: T recursion matches direct sums", [&]() -> std::string {
    for (int m = 1; m <= 3; ++m)
      for (std::int64_t a : {1, 2, 7, 40}) {
        auto r = t_sum(m, a);
        auto d = t_sum_direct(m, a, 4000);
        if (std::abs(r.value - d.value) > r.err + d.err) return "T" + std::to_string(m) + "(" + std::to_string(a) + ")";
      }
    return {};
  });
  run("harness: JSON round trip is byte identical", [&]() -> std::string {
    Json j = closed_result_json("pair 2 3", m2_pair_xn(2, 3), 0);
    const std::string s = dump_json(j);
    if (dump_json(Json::parse(s)) != s) return s;
    return {};
  });
  return out;
}

}  // namespace mahler
