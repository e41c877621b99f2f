#pragma once

// Command-line front end.  Subcommands:
//
//   euler-q   --p 5 --q 1+p --M 12 [--backend exact|padic]
//   gen-euler --p 5 --q 1+p --char 3:1 --n 4 --t 0 [--F 15] [--backend exact|padic]
//   integral  --p 5 --q 1+p --f "(t+a)^3" --t 0 --levels 1..6 [--char 3:1]
//   lq        --p 5 --q 1+p --char 3:1 --s -3 --t 0 --prec 20
//   verify theorem|sum-identity|distribution [--grid default | point options]
//
// Every command is deterministic.  p-adic values are printed with the digits
// they actually carry and nothing more.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "plq/dirichlet.hpp"
#include "plq/expr.hpp"
#include "plq/field.hpp"
#include "plq/lfunc.hpp"
#include "plq/padic.hpp"
#include "plq/qeuler.hpp"
#include "plq/qmeasure.hpp"
#include "plq/serialize.hpp"

namespace plq::cli {

inline constexpr long kDefaultPrecision = 20;

/// Default working precision, overridable through PADIC_LQ_PREC_DEFAULT.
inline long default_precision() {
  if (const char* env = std::getenv("PADIC_LQ_PREC_DEFAULT")) {
    try {
      size_t used = 0;
      long v = std::stol(env, &used);
      if (used == std::string(env).size() && v >= 1) return v;
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument(std::string("PADIC_LQ_PREC_DEFAULT: not a positive integer: '") + env + "'");
  }
  return kDefaultPrecision;
}

/// Parsed, validated parameters shared by the subcommands.
struct RunConfig {
  long p = 5;
  long precision = kDefaultPrecision;
  std::string q_spec = "1+p";
  std::string char_spec = "triv";
  std::string format = "json";

  mpq_class q() const {
    mpq_class v = parse_rational(q_spec, p);
    // validates |q - 1|_p < 1
    (void)make_qparam(RationalField{p}, v);
    return v;
  }
  DirichletCharacter chi() const { return parse_character(char_spec, p); }
};

/// "1..6" or "4".
inline std::pair<long, long> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      long v = std::stol(s);
      return {v, v};
    }
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + s + "', expected lo..hi");
  }
}

namespace detail {

inline void add_common(CLI::App* app, RunConfig& cfg, bool with_char) {
  app->add_option("--p", cfg.p, "odd prime")->required();
  app->add_option("--q", cfg.q_spec, "q: 1, 1+p, 1+p^k or u/v")->capture_default_str();
  app->add_option("--N,--prec", cfg.precision, "p-adic precision in digits")->capture_default_str();
  if (with_char) app->add_option("--char", cfg.char_spec, "character: triv or ell:k[,ell:k...]")->capture_default_str();
  app->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
}

inline void emit_rows(std::ostream& out, const std::string& format, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows, const nlohmann::json& json) {
  if (format == "json") {
    out << json.dump() << "\n";
    return;
  }
  const char sep = format == "csv" ? ',' : ' ';
  for (size_t i = 0; i < header.size(); ++i) out << (i ? std::string(1, sep) : "") << header[i];
  out << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? std::string(1, sep) : "") << r[i];
    out << "\n";
  }
}

inline std::vector<std::string> padic_cells(const PadicNum& x) {
  return {valuation_string(x), std::to_string(x.relative_precision()), digit_string(x)};
}

inline std::string bool_str(bool b) { return b ? "pass" : "FAIL"; }

}  // namespace detail

struct EulerArgs {
  long M = 0;
  std::string backend = "padic";
};

inline int cmd_euler_q(const RunConfig& cfg, const EulerArgs& a, std::ostream& out) {
  const mpq_class q = cfg.q();
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<std::string>> table;
  if (a.backend == "exact") {
    const RationalField f{cfg.p};
    const auto cache = q_euler_numbers(make_qparam(f, q), a.M);
    for (long n = 0; n <= a.M; ++n) {
      rows.push_back({{"n", n}, {"value", cache[n].get_str()}});
      table.push_back({std::to_string(n), cache[n].get_str()});
    }
    detail::emit_rows(out, cfg.format, {"n", "value"}, table, rows);
  } else {
    const PadicField f{PadicContext(cfg.p, cfg.precision)};
    const auto cache = q_euler_numbers(make_qparam(f, q), a.M);
    for (long n = 0; n <= a.M; ++n) {
      rows.push_back({{"n", n}, {"value", to_json(cache[n])}});
      auto cells = detail::padic_cells(cache[n]);
      cells.insert(cells.begin(), std::to_string(n));
      table.push_back(cells);
    }
    detail::emit_rows(out, cfg.format, {"n", "valuation", "prec", "digits"}, table, rows);
  }
  return 0;
}

struct GenEulerArgs {
  long n = 0;
  std::string t = "0";
  std::optional<long> F;
  std::string backend = "padic";
};

inline int cmd_gen_euler(const RunConfig& cfg, const GenEulerArgs& a, std::ostream& out) {
  const mpq_class q = cfg.q();
  const DirichletCharacter chi = cfg.chi();
  const mpq_class t = parse_rational(a.t, cfg.p);
  const long F = a.F ? *a.F : chi.modulus();
  nlohmann::json j{{"n", a.n}, {"F", F}, {"char", chi.to_string()}};
  std::vector<std::vector<std::string>> table;
  if (a.backend == "exact") {
    const RationalField f{cfg.p};
    const mpq_class v = gen_q_euler_poly(chi, make_qparam(f, q), a.n, t, F);
    j["value"] = v.get_str();
    table.push_back({std::to_string(a.n), std::to_string(F), v.get_str()});
    detail::emit_rows(out, cfg.format, {"n", "F", "value"}, table, j);
  } else {
    const PadicField f{PadicContext(cfg.p, cfg.precision)};
    const PadicNum v = gen_q_euler_poly(chi, make_qparam(f, q), a.n, f.from(t), F);
    j["value"] = to_json(v);
    auto cells = detail::padic_cells(v);
    cells.insert(cells.begin(), {std::to_string(a.n), std::to_string(F)});
    table.push_back(cells);
    detail::emit_rows(out, cfg.format, {"n", "F", "valuation", "prec", "digits"}, table, j);
  }
  return 0;
}

struct IntegralArgs {
  std::string f = "a";
  std::string t = "0";
  std::string levels = "1..4";
};

inline int cmd_integral(const RunConfig& cfg, const IntegralArgs& a, std::ostream& out) {
  const PadicField fld{PadicContext(cfg.p, cfg.precision)};
  const auto q = make_qparam(fld, cfg.q());
  const mpq_class t = parse_rational(a.t, cfg.p);
  const RationalPoly poly = parse_polynomial(a.f, cfg.p, t);
  std::optional<DirichletCharacter> chi;
  if (cfg.char_spec != "triv") chi = cfg.chi();
  auto [lo, hi] = parse_range(a.levels);
  if (lo < 1 || hi < lo) throw std::invalid_argument("levels must satisfy 1 <= lo <= hi");

  std::vector<PadicNum> coeffs;
  for (const auto& c : poly) coeffs.push_back(fld.from(c));
  const IntegrandSpec<PadicField> spec{coeffs, chi, fld.from(0L), 0};

  // Limit from the moments: a^j integrates to E*_{j,q}, or E*_{j,chi,q}(0)
  // against a nontrivial character.
  PadicNum limit = fld.from(0L);
  const QEulerCache<PadicField> cache(q, static_cast<long>(poly.size()));
  for (size_t j = 0; j < coeffs.size(); ++j) {
    const long jj = static_cast<long>(j);
    const PadicNum moment = (chi && !chi->is_trivial())
                                ? gen_q_euler_poly(*chi, q, jj, fld.from(0L))
                                : cache[jj];
    limit += coeffs[j] * moment;
  }

  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<std::string>> table;
  std::optional<PadicNum> prev;
  for (long L = lo; L <= hi; ++L) {
    const PadicNum v = fermionic_integral_approx(spec, q, L);
    const long to_limit = agreement(v, limit);
    nlohmann::json row{{"level", L}, {"value", to_json(v)}, {"limit_valuation", to_limit}};
    std::string delta = "-";
    if (prev) {
      const long dv = agreement(v, *prev);
      row["delta_valuation"] = dv;
      delta = std::to_string(dv);
    }
    rows.push_back(row);
    auto cells = detail::padic_cells(v);
    cells.insert(cells.begin(), std::to_string(L));
    cells.push_back(delta);
    cells.push_back(std::to_string(to_limit));
    table.push_back(cells);
    prev = v;
  }
  nlohmann::json j{{"limit", to_json(limit)}, {"levels", rows}};
  detail::emit_rows(out, cfg.format, {"level", "valuation", "prec", "digits", "delta_valuation", "limit_valuation"},
                    table, j);
  return 0;
}

struct LqArgs {
  std::string s = "0";
  std::string t = "0";
  std::optional<long> F;
  std::optional<long> M;
};

inline int cmd_lq(const RunConfig& cfg, const LqArgs& a, std::ostream& out) {
  LqOptions opts;
  opts.F = a.F;
  opts.m_terms = a.M;
  const LqEvaluator ev(cfg.chi(), cfg.q(), cfg.precision, opts);
  const LqValue v = ev.lq_eval(parse_rational(a.s, cfg.p), parse_rational(a.t, cfg.p));
  nlohmann::json j{{"value", to_json(v.value)},
                   {"achieved_prec", v.achieved_prec},
                   {"F", ev.level()},
                   {"M_terms", ev.m_terms()}};
  auto cells = detail::padic_cells(v.value);
  cells.push_back(std::to_string(v.achieved_prec));
  cells.push_back(std::to_string(ev.level()));
  cells.push_back(std::to_string(ev.m_terms()));
  detail::emit_rows(out, cfg.format, {"valuation", "prec", "digits", "achieved_prec", "F", "M_terms"}, {cells}, j);
  return 0;
}

struct VerifyArgs {
  std::string what;
  std::string grid;
  long n = 0;
  long m = 1;
  std::string t = "0";
  std::string levels;  ///< empty: d, 3d, 9d with d the character modulus
  long slack = 5;  ///< allowed digits lost below the target
};

/// The default theorem grid.
struct TheoremPoint {
  long p;
  std::string q;
  std::string chi;
  long n;
  std::string t;
};

inline std::vector<TheoremPoint> default_theorem_grid() {
  std::vector<TheoremPoint> g;
  for (long p : {5L, 7L})
    for (const char* q : {"1", "1+p", "1+p^2"})
      for (const char* c : {"triv", "3:1", "p:1"})
        for (long n = 0; n <= 6; ++n)
          for (const char* t : {"0", "1", "2+3p"}) g.push_back({p, q, c, n, t});
  return g;
}

inline int cmd_verify_theorem(const RunConfig& cfg, const VerifyArgs& a, std::ostream& out) {
  std::vector<TheoremPoint> points;
  if (a.grid == "default")
    points = default_theorem_grid();
  else if (a.grid.empty())
    points.push_back({cfg.p, cfg.q_spec, cfg.char_spec, a.n, a.t});
  else
    throw std::invalid_argument("unknown grid '" + a.grid + "'");

  bool all = true;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<std::string>> table;
  for (const auto& pt : points) {
    const DirichletCharacter chi = parse_character(pt.chi, pt.p);
    const LqEvaluator ev(chi, parse_rational(pt.q, pt.p), cfg.precision);
    const auto chk = ev.verify_interpolation(pt.n, ev.make(parse_rational(pt.t, pt.p)));
    const bool ok = chk.agreement >= cfg.precision - a.slack && chk.guard <= a.slack;
    all = all && ok;
    rows.push_back({{"p", pt.p},
                    {"q", pt.q},
                    {"char", chi.to_string()},
                    {"n", pt.n},
                    {"t", pt.t},
                    {"lhs", to_json(chk.lhs.value)},
                    {"rhs", to_json(chk.rhs.value)},
                    {"agreement", chk.agreement},
                    {"guard", chk.guard},
                    {"pass", ok}});
    table.push_back({std::to_string(pt.p), pt.q, chi.to_string(), std::to_string(pt.n), pt.t,
                     std::to_string(chk.agreement), std::to_string(chk.guard), detail::bool_str(ok)});
  }
  detail::emit_rows(out, cfg.format, {"p", "q", "char", "n", "t", "agreement", "guard", "status"}, table, rows);
  return all ? 0 : 1;
}

inline int cmd_verify_sum_identity(const RunConfig& cfg, const VerifyArgs& a, std::ostream& out) {
  struct Point {
    std::string chi;
    long m, n;
    std::string t, q;
  };
  std::vector<Point> points;
  if (a.grid == "default") {
    for (const char* c : {"triv", "3:1"})
      for (long m = 1; m <= 6; ++m)
        for (long n = 1; n <= 4; ++n)
          for (const char* t : {"0", "1", "1/2"})
            for (const char* q : {"1", "6"}) points.push_back({c, m, n, t, q});
  } else if (a.grid.empty()) {
    points.push_back({cfg.char_spec, a.m, a.n, a.t, cfg.q_spec});
  } else {
    throw std::invalid_argument("unknown grid '" + a.grid + "'");
  }
  const long p = a.grid == "default" ? 5 : cfg.p;
  const RationalField f{p};
  bool all = true;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<std::string>> table;
  for (const auto& pt : points) {
    const DirichletCharacter chi = parse_character(pt.chi, p);
    const auto chk = sum_identity_check(chi, make_qparam(f, parse_rational(pt.q, p)), pt.m, pt.n,
                                        parse_rational(pt.t, p));
    const bool ok = chk.lhs == chk.rhs;
    all = all && ok;
    rows.push_back({{"char", pt.chi}, {"m", pt.m}, {"n", pt.n}, {"t", pt.t}, {"q", pt.q},
                    {"lhs", chk.lhs.get_str()}, {"rhs", chk.rhs.get_str()}, {"pass", ok}});
    table.push_back({pt.chi, std::to_string(pt.m), std::to_string(pt.n), pt.t, pt.q, chk.lhs.get_str(),
                     chk.rhs.get_str(), detail::bool_str(ok)});
  }
  detail::emit_rows(out, cfg.format, {"char", "m", "n", "t", "q", "lhs", "rhs", "status"}, table, rows);
  return all ? 0 : 1;
}

inline int cmd_verify_distribution(const RunConfig& cfg, const VerifyArgs& a, std::ostream& out) {
  const DirichletCharacter chi = cfg.chi();
  std::vector<long> levels;
  if (a.levels.empty()) {
    const long d = chi.modulus();
    levels = {d, 3 * d, 9 * d};
  } else {
    std::stringstream ss(a.levels);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        levels.push_back(std::stol(item));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad level '" + item + "' in --F");
      }
    }
  }
  if (levels.size() < 2) throw std::invalid_argument("distribution: need at least two levels");
  const PadicField f{PadicContext(cfg.p, cfg.precision)};
  const auto q = make_qparam(f, cfg.q());
  const PadicNum t = f.from(parse_rational(a.t, cfg.p));
  long nmin = a.n, nmax = a.n;
  if (a.grid == "default") nmin = 0, nmax = 8;
  bool all = true;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::vector<std::string>> table;
  for (long n = nmin; n <= nmax; ++n) {
    const PadicNum base = gen_q_euler_poly(chi, q, n, t, levels[0]);
    long worst = kInfinity;
    for (size_t i = 1; i < levels.size(); ++i)
      worst = std::min(worst, agreement(base, gen_q_euler_poly(chi, q, n, t, levels[i])));
    worst = std::min(worst, cfg.precision);
    const bool ok = worst >= cfg.precision - a.slack;
    all = all && ok;
    rows.push_back({{"n", n}, {"agreement", worst}, {"value", to_json(base)}, {"pass", ok}});
    table.push_back({std::to_string(n), std::to_string(worst), detail::bool_str(ok)});
  }
  detail::emit_rows(out, cfg.format, {"n", "agreement", "status"}, table, rows);
  return all ? 0 : 1;
}

/// Runs the CLI; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic q-Euler numbers and the two-variable p-adic l_q-function"};
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg.precision = default_precision();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  EulerArgs euler;
  auto* c_euler = app.add_subcommand("euler-q", "q-Euler numbers E*_{0..M,q}");
  detail::add_common(c_euler, cfg, false);
  c_euler->add_option("--M", euler.M, "largest index")->required()->check(CLI::NonNegativeNumber);
  c_euler->add_option("--backend", euler.backend)->check(CLI::IsMember({"exact", "padic"}));

  GenEulerArgs gen;
  auto* c_gen = app.add_subcommand("gen-euler", "generalized q-Euler polynomial E*_{n,chi,q}(t)");
  detail::add_common(c_gen, cfg, true);
  c_gen->add_option("--n", gen.n)->required()->check(CLI::NonNegativeNumber);
  c_gen->add_option("--t", gen.t, "rational t, may use p");
  c_gen->add_option("--F", gen.F, "level (odd multiple of the modulus)");
  c_gen->add_option("--backend", gen.backend)->check(CLI::IsMember({"exact", "padic"}));

  IntegralArgs integ;
  auto* c_int = app.add_subcommand("integral", "level approximations of the fermionic q-integral");
  detail::add_common(c_int, cfg, true);
  c_int->add_option("--f", integ.f, "polynomial in a and t");
  c_int->add_option("--t", integ.t);
  c_int->add_option("--levels", integ.levels, "lo..hi");

  LqArgs lq;
  auto* c_lq = app.add_subcommand("lq", "evaluate l_{p,q}(s,t,chi)");
  detail::add_common(c_lq, cfg, true);
  c_lq->add_option("--s", lq.s, "rational s with |s|_p <= 1");
  c_lq->add_option("--t", lq.t, "rational t with |t|_p <= 1");
  c_lq->add_option("--F", lq.F, "level");
  c_lq->add_option("--M", lq.M, "series terms");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "check identities; nonzero exit on failure");
  c_ver->add_option("what", ver.what)->required()->check(CLI::IsMember({"theorem", "sum-identity", "distribution"}));
  c_ver->add_option("--grid", ver.grid, "named grid (default)");
  c_ver->add_option("--p", cfg.p);
  c_ver->add_option("--q", cfg.q_spec);
  c_ver->add_option("--char", cfg.char_spec);
  c_ver->add_option("--N,--prec", cfg.precision);
  c_ver->add_option("--n", ver.n);
  c_ver->add_option("--m", ver.m);
  c_ver->add_option("--t", ver.t);
  c_ver->add_option("--F", ver.levels, "comma-separated levels for distribution (default d,3d,9d)");
  c_ver->add_option("--slack", ver.slack, "digits allowed below the target");
  std::string verify_format = "table";
  c_ver->add_option("--format", verify_format)->check(CLI::IsMember({"json", "csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cfg.precision < 1) throw std::invalid_argument("precision must be >= 1");
    if (*c_euler) return cmd_euler_q(cfg, euler, out);
    if (*c_gen) return cmd_gen_euler(cfg, gen, out);
    if (*c_int) return cmd_integral(cfg, integ, out);
    if (*c_lq) return cmd_lq(cfg, lq, out);
    if (*c_ver) {
      cfg.format = verify_format;
      if (ver.what == "theorem") return cmd_verify_theorem(cfg, ver, out);
      if (ver.what == "sum-identity") return cmd_verify_sum_identity(cfg, ver, out);
      return cmd_verify_distribution(cfg, ver, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace plq::cli
