#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>

#include "nilorb/finorbits.hpp"
#include "nilorb/instability.hpp"
#include "nilorb/localquat.hpp"
#include "report.hpp"

using namespace nilorb;
using report::Table;

namespace {

enum Exit { kOk = 0, kFalsified = 2, kGuard = 3, kBadConfig = 4 };

struct Common {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct Result {
  Table table;
  bool pass = true;
};

RootDatum datum(const std::string& type, const std::string& isogeny) {
  if (type.rfind("GL", 0) == 0) return RootDatum::general_linear(std::stoi(type.substr(2)));
  return RootDatum::build(type, parse_isogeny(isogeny));
}

LieAlgebraPtr algebra(const std::string& type, const std::string& isogeny, std::uint32_t p) {
  return LieAlgebra::build(datum(type, isogeny), CoeffField(p));
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Result cmd_orbits(const std::string& type, const std::string& isogeny, std::uint32_t p) {
  auto L = algebra(type, isogeny, p);
  Result r;
  r.table.command = "orbits";
  r.table.meta = {{"type", type}, {"isogeny", isogeny}, {"char", p}, {"algebra", L->id()}};
  std::size_t index = 0;
  for (const auto& o : enumerate_orbits(L)) {
    auto row = o.to_json();
    row["index"] = index++;
    r.table.rows.push_back(std::move(row));
  }
  r.table.meta["count"] = r.table.rows.size();
  return r;
}

Result cmd_optimal(const std::string& type, const std::string& isogeny, std::uint32_t p, std::size_t orbit,
                   const std::string& bound, int threads) {
  auto L = algebra(type, isogeny, p);
  const auto orbits = enumerate_orbits(L);
  require(orbit < orbits.size(), "optimal: orbit index out of range, have " + std::to_string(orbits.size()));
  const auto& o = orbits[orbit];
  require(!o.representative.is_zero(), "optimal: orbit " + std::to_string(orbit) + " is the zero orbit");
  std::optional<mpq_class> b;
  if (bound != "auto") {
    try {
      b = mpq_class(bound);
      b->canonicalize();
    } catch (const std::exception&) {
      throw std::invalid_argument("optimal: bound must be 'auto' or a rational, got '" + bound + "'");
    }
    require(*b > 0, "optimal: bound must be positive");
  }
  SearchOptions so;
  so.threads = threads;
  const auto rep = theorem_assoc_check(o.representative, o.associated_cochar, default_norm(L->datum()), b, so);
  Result r;
  r.table.command = "optimal";
  r.table.meta = {{"type", type}, {"isogeny", isogeny}, {"char", p}, {"orbit", orbit}, {"bound", bound}};
  auto row = rep.to_json();
  row["bala_carter_label"] = o.label;
  row["associated_cochar"] = o.associated_cochar.coords;
  row["failure"] = rep.failure;
  r.table.rows.push_back(std::move(row));
  r.pass = rep.pass;
  return r;
}

Result cmd_uorbit(const std::string& type, const std::string& isogeny, std::uint32_t q, int threads) {
  require(q > 0, "uorbit: q must be a prime");
  auto L = algebra(type, isogeny, q);
  FinOptions fo;
  fo.threads = threads;
  Result r;
  r.table.command = "uorbit";
  r.table.meta = {{"type", type}, {"isogeny", isogeny}, {"q", q}};
  const auto orbits = enumerate_orbits(L);
  for (const auto& o : orbits) {
    const auto dim_u = instability_parabolic(L->datum(), o.associated_cochar).u_roots.size();
    if (static_cast<double>(dim_u) * std::log10(static_cast<double>(q)) > 7)
      throw GuardError("uorbit: q^dim u exceeds 10^7 for orbit " + o.label);
  }
  for (const auto& o : orbits) {
    if (o.representative.is_zero()) continue;
    const auto rep = u_orbit_check(o.representative, o.associated_cochar, fo);
    auto row = rep.to_json();
    row["bala_carter_label"] = o.label;
    row["failure"] = rep.failure;
    r.table.rows.push_back(std::move(row));
    r.pass = r.pass && rep.pass;
  }
  r.table.meta["pass"] = r.pass;
  return r;
}

Result cmd_levi(const std::string& type, const std::string& isogeny, std::uint32_t q, int threads) {
  require(q > 0, "levi: q must be a prime");
  auto L = algebra(type, isogeny, q);
  FinOptions fo;
  fo.threads = threads;
  Result r;
  r.table.command = "levi";
  r.table.meta = {{"type", type}, {"isogeny", isogeny}, {"q", q}};
  for (const auto& o : enumerate_orbits(L)) {
    if (o.representative.is_zero()) continue;
    const auto rep = centralizer_levi_check(o.representative, o.associated_cochar, fo);
    auto row = rep.to_json();
    row["bala_carter_label"] = o.label;
    row["failure"] = rep.failure;
    r.table.rows.push_back(std::move(row));
    r.pass = r.pass && rep.pass;
  }
  r.table.meta["pass"] = r.pass;
  return r;
}

Result cmd_rational(const std::string& type, const std::string& isogeny, std::uint32_t q, int threads) {
  require(q > 0, "rational: q must be a prime");
  auto L = algebra(type, isogeny, q);
  FinOptions fo;
  fo.threads = threads;
  const auto part = count_rational_nilpotent_orbits(L, fo);
  auto j = part.to_json();
  Result r;
  r.table.command = "rational";
  r.table.meta = {{"type", type},
                  {"isogeny", isogeny},
                  {"q", q},
                  {"group_order", part.group_order},
                  {"nilpotent_count", part.nilpotent_count},
                  {"orbit_count", part.orbits.size()},
                  {"consistent", part.consistent},
                  {"failure", part.failure}};
  for (auto& row : j.at("orbits")) {
    if (row.at("geometric_index").is_null()) row["geometric_index"] = -1;
    r.table.rows.push_back(row);
  }
  r.pass = part.consistent;
  return r;
}

Result cmd_c2local(std::uint32_t q, std::size_t prec, std::size_t samples, std::size_t pairs, std::uint64_t seed,
                   int threads) {
  const auto rep = c2_orbit_census(q, prec, seed, samples, pairs, threads);
  Result r;
  r.table.command = "c2local";
  r.table.meta = {{"q", q}, {"precision", prec}, {"seed", seed}};
  r.table.rows.push_back(rep.to_json());
  r.pass = rep.pass();
  return r;
}

Result cmd_lambda(const std::string& type, std::uint32_t p, std::size_t samples, std::size_t pairs,
                  std::uint64_t seed, int threads) {
  const auto rep = lambda_check(algebra(type, "sc", p), samples, pairs, seed, true, threads);
  Result r;
  r.table.command = "lambda";
  r.table.meta = {{"type", type}, {"p", p}, {"seed", seed}};
  r.table.rows.push_back(rep.to_json());
  r.pass = rep.pass;
  return r;
}

// "c*t^k + c*t^k - t^k + c" over F_p, known up to O(t^prec).
LaurentScalar parse_laurent(const std::string& text, std::uint32_t p, std::int64_t prec) {
  auto f = FiniteField::get(p);
  require(f->degree() == 1, "artin-schreier: p must be prime");
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), "artin-schreier: empty series");
  static const std::regex term(R"(([+-]?)(?:(\d+)(?:\*?t(?:\^\(?(-?\d+)\)?)?)?|t(?:\^\(?(-?\d+)\)?)?))");
  std::map<std::int64_t, std::int64_t> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::smatch m;
    const std::string rest = s.substr(pos);
    require(std::regex_search(rest, m, term, std::regex_constants::match_continuous) && m.length(0) > 0,
            "artin-schreier: cannot parse '" + rest + "'");
    require(pos == 0 || m[1].length() > 0, "artin-schreier: missing sign before '" + rest + "'");
    const std::int64_t sign = m[1] == "-" ? -1 : 1;
    std::int64_t c = 1, k = 0;
    if (m[2].matched) {
      c = std::stoll(m[2]);
      const bool has_t = m.str(0).find('t') != std::string::npos;
      k = has_t ? (m[3].matched ? std::stoll(m[3]) : 1) : 0;
    } else {
      k = m[4].matched ? std::stoll(m[4]) : 1;
    }
    coeffs[k] += sign * c;
    pos += static_cast<std::size_t>(m.length(0));
  }
  const std::int64_t lo = coeffs.begin()->first;
  require(coeffs.rbegin()->first < prec, "artin-schreier: --prec must exceed every exponent");
  std::vector<std::uint32_t> window(static_cast<std::size_t>(prec - lo), 0);
  for (auto [k, c] : coeffs) window[static_cast<std::size_t>(k - lo)] = f->from_int(c);
  return LaurentScalar::series(f, lo, window);
}

Result cmd_artin_schreier(std::uint32_t p, const std::string& g, std::int64_t prec, const std::string& expect) {
  require(expect.empty() || expect == "solvable" || expect == "unsolvable",
          "artin-schreier: --expect is 'solvable' or 'unsolvable'");
  const auto series = parse_laurent(g, p, prec);
  const auto res = artin_schreier_solvable(series);
  Result r;
  r.table.command = "artin-schreier";
  r.table.meta = {{"p", p}, {"g", g}, {"prec", prec}, {"expect", expect}};
  auto row = res.to_json();
  row["valuation"] = series.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(series.valuation());
  r.table.rows.push_back(std::move(row));
  if (!expect.empty()) r.pass = res.solvable == (expect == "solvable");
  return r;
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return report::to_csv(t);
  if (format == "pretty") return report::to_pretty(t);
  return report::to_json(t).dump(2) + "\n";
}

void write(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
}

int fail(const std::string& command, const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"schema_version", report::kSchemaVersion},
                      {"command", command},
                      {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cout << j.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilorb: nilpotent orbits, instability and local quaternion checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "output path, '-' for stdout");
  app.add_option("--seed", common.seed, "random seed; NILORB_SEED takes precedence")->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads, 0 for the OpenMP default")->check(CLI::NonNegativeNumber);

  std::string type = "C2", isogeny = "sc", bound = "auto", g, expect;
  std::uint32_t p = 0, q = 3;
  std::size_t orbit = 0, prec = 16, samples = 200, pairs = 60, lsamples = 10000, lpairs = 1000;
  std::int64_t as_prec = 8;
  auto typed = [&](CLI::App* c, const char* field_flag, std::uint32_t& field, bool required) {
    c->add_option("--type", type, "Cartan type, e.g. C2, A1xA2, GL3")->capture_default_str();
    c->add_option("--isogeny", isogeny, "sc, ad or gl")->capture_default_str();
    auto* o = c->add_option(field_flag, field, "characteristic or field size");
    if (required) o->required();
  };

  auto* orbits = app.add_subcommand("orbits", "Bala-Carter table of nilpotent orbits");
  typed(orbits, "--char", p, false);
  auto* optimal = app.add_subcommand("optimal", "optimal cocharacter check for one orbit");
  typed(optimal, "--char", p, false);
  optimal->add_option("--orbit", orbit, "row index in the orbit table")->required();
  optimal->add_option("--bound", bound, "'auto' (9 |phi|^2) or a rational bound on |psi|^2")->capture_default_str();
  auto* uorbit = app.add_subcommand("uorbit", "Ad(U(F_q))X = X + v(F_q) for each nonzero orbit");
  typed(uorbit, "--q", q, true);
  auto* levi = app.add_subcommand("levi", "centralizer factorization C = C_phi . R in G(F_q)");
  typed(levi, "--q", q, true);
  auto* rational = app.add_subcommand("rational", "G(F_q)-orbits on the nilpotent cone");
  typed(rational, "--q", q, true);
  auto* c2local = app.add_subcommand("c2local", "orbit census for sp4 over F_q((t))");
  c2local->add_option("--q", q, "odd residue field size")->required();
  c2local->add_option("--prec", prec, "relative precision in t")->capture_default_str();
  c2local->add_option("--samples", samples, "random skew elements")->capture_default_str();
  c2local->add_option("--pairs", pairs, "same-class pairs to connect")->capture_default_str();
  auto* lambda = app.add_subcommand("lambda", "checks on the map Lambda: G -> g");
  lambda->add_option("--type", type, "Cartan type")->capture_default_str();
  lambda->add_option("--p", p, "prime")->required();
  lambda->add_option("--samples", lsamples, "unipotent samples")->capture_default_str();
  lambda->add_option("--pairs", lpairs, "equivariance pairs")->capture_default_str();
  auto* as = app.add_subcommand("artin-schreier", "solvability of y^p - y = g over F_p((t))");
  as->add_option("--p", p, "prime")->required();
  as->add_option("--g", g, "series such as '2*t^-3 + t^-1 + 1'")->required();
  as->add_option("--prec", as_prec, "absolute precision of g")->capture_default_str();
  as->add_option("--expect", expect, "'solvable' or 'unsolvable'");

  std::string command = "nilorb";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(command, "bad_config", e.what(), kBadConfig);
  }
  if (const char* env = std::getenv("NILORB_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      return fail(command, "bad_config", std::string("NILORB_SEED is not an integer: ") + env, kBadConfig);
    }
  }
  command = app.get_subcommands().front()->get_name();

  try {
    Result r;
    if (*orbits) r = cmd_orbits(type, isogeny, p);
    else if (*optimal) r = cmd_optimal(type, isogeny, p, orbit, bound, common.threads);
    else if (*uorbit) r = cmd_uorbit(type, isogeny, q, common.threads);
    else if (*levi) r = cmd_levi(type, isogeny, q, common.threads);
    else if (*rational) r = cmd_rational(type, isogeny, q, common.threads);
    else if (*c2local) r = cmd_c2local(q, prec, samples, pairs, common.seed, common.threads);
    else if (*lambda) r = cmd_lambda(type, p, lsamples, lpairs, common.seed, common.threads);
    else r = cmd_artin_schreier(p, g, as_prec, expect);
    r.table.meta["pass"] = r.pass;
    write(render(r.table, common.format), common.output);
    return r.pass ? kOk : kFalsified;
  } catch (const GuardError& e) {
    return fail(command, "guard", e.what(), kGuard);
  } catch (const PrecisionError& e) {
    return fail(command, "guard", e.what(), kGuard);
  } catch (const std::logic_error& e) {
    return fail(command, "bad_config", e.what(), kBadConfig);
  } catch (const std::exception& e) {
    return fail(command, "error", e.what(), 1);
  }
}
