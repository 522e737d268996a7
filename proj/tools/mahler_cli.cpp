// Command-line front end for the mahler library.
//
// Every subcommand prints one result document on stdout (JSON by default,
// or CSV / plain text with --format). Exit status: 0 success, 1 a tolerance
// or check failed, 2 usage or input error.

#include "mahler/harness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mahler;

namespace {

struct Globals {
  std::string format = "json";
  double tol = 1e-9;
  std::int64_t h_max = 1000000;
  std::int64_t L = 0;
  int workers = 0;
  std::uint64_t seed = 20240611;

  RunConfig run() const {
    RunConfig c;
    c.tol = tol;
    c.h_max = h_max;
    c.L = L;
    c.workers = workers > 0 ? workers : default_workers(1);
    c.format = parse_format(format);
    c.seed = seed;
    c.validate();
    return c;
  }
};

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

// Text rendering: one "key: value" line per scalar, arrays of objects as
// CSV blocks.
void emit_text(const Json& j, std::ostream& os) {
  if (j.is_array()) {
    os << to_csv(j);
    return;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten_json(j, "", flat);
  for (auto& [k, v] : flat) os << k << ": " << v << "\n";
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it->is_array() && !it->empty() && it->front().is_object()) os << "\n[" << it.key() << "]\n" << to_csv(*it);
}

void emit(const Json& j, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: std::cout << dump_json(j) << "\n"; break;
    case OutputFormat::Csv: {
      // Documents with one ranked list emit that list.
      const Json* rows = &j;
      if (j.is_object())
        for (const char* key : {"entries", "ranked", "checks"})
          if (j.contains(key)) rows = &j[key];
      std::cout << to_csv(*rows);
      break;
    }
    case OutputFormat::Text: emit_text(j, std::cout); break;
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher and multiple Mahler measures of integer polynomials"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", g.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--h-max", g.h_max, "Truncation of the cotangent sums")->check(CLI::PositiveNumber);
  app.add_option("--L", g.L, "Truncation of the T/U sums (0 picks one per n)")->check(CLI::NonNegativeNumber);
  app.add_option("--workers", g.workers, "Worker threads (default MAHLER_WORKERS or 1)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for randomized corpora");

  // measure
  auto* measure = app.add_subcommand("measure", "m_k(P) by quadrature, roots or closed form");
  std::string poly_text, method = "quad";
  int k = 1;
  measure->add_option("--poly", poly_text, "Coefficient list or expression")->required();
  measure->add_option("--k", k, "Power of the logarithm (1..7)")->check(CLI::Range(1, 7));
  measure->add_option("--method", method, "quad, roots or closed")->check(CLI::IsMember({"quad", "roots", "closed"}));

  // pair
  auto* pair = app.add_subcommand("pair", "m(x^a-1, x^b-1) in closed form");
  std::int64_t a = 1, b = 1, c = 1;
  pair->add_option("--a", a)->required()->check(CLI::PositiveNumber);
  pair->add_option("--b", b)->required()->check(CLI::PositiveNumber);

  // cyclo-pair
  auto* cpair = app.add_subcommand("cyclo-pair", "m(phi_m, phi_n) by the Moebius double sum");
  std::int64_t m = 1, n = 1;
  bool compare = false;
  cpair->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  cpair->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  cpair->add_flag("--compare-formula", compare, "Also evaluate the closed product formula");

  // triple
  auto* triple = app.add_subcommand("triple", "m(x^a-1, x^b-1, x^c-1) in closed form");
  triple->add_option("--a", a)->required()->check(CLI::PositiveNumber);
  triple->add_option("--b", b)->required()->check(CLI::PositiveNumber);
  triple->add_option("--c", c)->required()->check(CLI::PositiveNumber);

  // m3-unit
  auto* m3u = app.add_subcommand("m3-unit", "m_3 of a product of x^d - 1 powers, e.g. 1:-1,5:1");
  std::string cyclo_text;
  m3u->add_option("--poly", cyclo_text, "d:e list")->required();

  // table
  auto* table = app.add_subcommand("table", "Reproduce the reciprocal table (m and m_2)");
  std::string csv_path;
  table->add_option("--csv", csv_path, "Also write the table as CSV to this path");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Check the m_2 / m_4 lower bounds on a corpus");
  std::string corpus_path;
  bool standard = false;
  bounds->add_option("--corpus", corpus_path, "One polynomial per line, # comments");
  bounds->add_flag("--standard", standard, "Use the built-in corpus (table, random, search survivors)");

  // limits
  auto* limits = app.add_subcommand("limits", "Distance of a sequence family to its limit");
  std::string family, points;
  limits->add_option("--family", family, "m2_trinomial, m3_quotient, m3_product or m3_quartic")->required();
  limits->add_option("--points", points, "Comma-separated parameters")->required();

  // search
  auto* search = app.add_subcommand("search", "Exhaustive small search of monic reciprocal polynomials");
  int deg = 10, height = 1;
  std::size_t top = 20;
  search->add_option("--deg", deg)->check(CLI::Range(1, 12));
  search->add_option("--height", height)->check(CLI::Range(1, 2));
  search->add_option("--top", top, "Rows to print (0 for all)");

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    const RunConfig cfg = g.run();
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;

    if (measure->parsed()) {
      IntPoly P = parse_poly(poly_text);
      const std::string input = "m_" + std::to_string(k) + "(" + P.to_expr() + ")";
      if (method == "closed") {
        auto cf = closed_form_measure(P, k);
        if (!cf) {
          std::cerr << "no closed form for " << input << "\n";
          return 2;
        }
        emit(closed_result_json(input, *cf, elapsed_ms(t0)), cfg.format);
      } else {
        Measurement r;
        if (method == "roots") {
          if (k != 1) {
            std::cerr << "--method roots only gives m (k = 1)\n";
            return 2;
          }
          r = mahler_classical_roots(P);
        } else {
          r = mahler_k(P, k, cfg.quad());
        }
        emit(measurement_json(input, r), cfg.format);
        status = r.tol_met ? 0 : 1;
      }
    } else if (pair->parsed()) {
      emit(closed_result_json("m(x^" + std::to_string(a) + "-1,x^" + std::to_string(b) + "-1)", m2_pair_xn(a, b),
                              elapsed_ms(t0)),
           cfg.format);
    } else if (cpair->parsed()) {
      const std::string input = "m(phi_" + std::to_string(m) + ",phi_" + std::to_string(n) + ")";
      const CycloPairComparison cmp = compare_cyclo_pair(m, n);
      Json j = closed_result_json(input, cmp.oracle, elapsed_ms(t0));
      if (compare) {
        Json f;
        f["formula"] = closed_form_json(cmp.formula);
        f["formula_agrees"] = cmp.formula_agrees;
        f["corrected"] = closed_form_json(cmp.corrected);
        f["corrected_agrees"] = cmp.corrected_agrees;
        f["note"] = cmp.formula_agrees ? "closed product formula agrees with the divisor sum"
                                       : "closed product formula disagrees with the divisor sum: " +
                                             cmp.formula.to_string() + " vs " + cmp.oracle.to_string();
        j["comparison"] = f;
      }
      emit(j, cfg.format);
    } else if (triple->parsed()) {
      M3Options opt;
      opt.h_max = cfg.h_max;
      emit(closed_result_json("m(x^" + std::to_string(a) + "-1,x^" + std::to_string(b) + "-1,x^" + std::to_string(c) + "-1)",
                              m3_triple_xn(a, b, c, opt), elapsed_ms(t0)),
           cfg.format);
    } else if (m3u->parsed()) {
      const CycloProduct C = parse_cyclo_product(cyclo_text);
      emit(closed_result_json("m_3(" + C.to_string() + ")", m3_unit_poly(cyclo_product_to_args(C)), elapsed_ms(t0)),
           cfg.format);
    } else if (table->parsed()) {
      auto rows = reproduce_table(cfg);
      Json j;
      j["entries"] = table_json(rows);
      bool all = true;
      for (auto& r : rows) all = all && r.ok();
      j["all_within_tolerance"] = all;
      j["tolerance"] = kTableTol;
      j["runtime_ms"] = elapsed_ms(t0);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << to_csv(j["entries"]);
      }
      emit(j, cfg.format);
      status = all ? 0 : 1;
    } else if (bounds->parsed()) {
      if (corpus_path.empty() == !standard) {
        std::cerr << "bounds needs exactly one of --corpus or --standard\n";
        return 2;
      }
      auto corpus = standard ? standard_bounds_corpus(cfg) : read_corpus_file(corpus_path);
      auto rep = verify_bounds(corpus, cfg);
      Json j = bounds_json(rep);
      j["runtime_ms"] = elapsed_ms(t0);
      emit(j, cfg.format);
      status = rep.violation_count() == 0 ? 0 : 1;
    } else if (limits->parsed()) {
      auto rep = boyd_lawton_demo(parse_sequence_family(family), parse_int_list(points), cfg.quad(), cfg.h_max);
      Json j = sequence_json(rep);
      j["runtime_ms"] = elapsed_ms(t0);
      emit(j, cfg.format);
      for (auto& v : rep.values) status = v.tol_met ? status : 1;
    } else if (search->parsed()) {
      auto res = search_small(deg, height, cfg);
      Json j = search_json(res, top);
      j["runtime_ms"] = elapsed_ms(t0);
      emit(j, cfg.format);
      status = res.complete ? 0 : 1;
    } else if (self->parsed()) {
      auto checks = selftest(cfg);
      Json j;
      Json a = Json::array();
      bool all = true;
      for (auto& ch : checks) {
        all = all && ch.pass;
        a.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
      }
      j["checks"] = a;
      j["all_pass"] = all;
      j["runtime_ms"] = elapsed_ms(t0);
      emit(j, cfg.format);
      status = all ? 0 : 1;
    }
    return status;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position << ": " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
