#include "dzeta/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dzeta/errors.hpp"
#include "dzeta/fixtures.hpp"
#include "dzeta/json_io.hpp"

namespace dzeta::cli {

namespace {

using io::Json;

struct Globals {
  std::uint64_t budget = ff::kDefaultBudget;
  std::string policy;  // empty: take it from the input
  unsigned threads = 0;
  std::string format = "json";
  bool timing = false;

  geo::ComputeOptions options() const { return {budget, threads}; }
};

Json load_json(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw ValidationError(what + ": cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

template <class F>
auto with_context(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ResourceError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(what + " " + e.what());
  }
}

Json field_json(const ff::FieldSpec& q) {
  if (q.e == 1) return q.p;
  return Json::array({q.p, q.e});
}

ff::FieldSpec parse_q(const std::string& text) {
  return with_context("--q", [&] { return ff::FieldSpec::parse(text); });
}

geo::VarietySpec load_variety(const std::string& arg, const ff::FieldSpec& q) {
  return with_context("--variety", [&] { return io::parse_variety_spec(load_json(arg, "--variety"), q); });
}

geo::AutomorphismSpec load_auto(const std::string& arg, const ff::FieldSpec& q) {
  return with_context("--auto", [&] { return io::parse_automorphism_spec(load_json(arg, "--auto"), q); });
}

asmb::FinAssembler load_assembler(const std::string& arg, const std::string& what, const Globals& g) {
  asmb::AssemblerData d = with_context(what, [&] { return io::parse_assembler(load_json(arg, what)); });
  if (!g.policy.empty()) d.policy = asmb::parse_policy(g.policy);
  asmb::FinAssembler a = asmb::FinAssembler::from_data(d);
  const auto violations = asmb::validate(a);
  if (!violations.empty()) {
    throw ValidationError(what + ": " + violations.front().kind + " (" + violations.front().witness + ")");
  }
  return a;
}

asmb::Policy product_policy(const Globals& g) {
  return g.policy.empty() ? asmb::Policy::kExcludeDegenerateProductCovers : asmb::parse_policy(g.policy);
}

struct Prepared {
  geo::StratumN stratum;
  std::vector<std::uint32_t> phi;
};

Prepared prepare(const geo::VarietySpec& v, const geo::AutomorphismSpec& a, const ff::FieldSpec& q, unsigned n,
                 const geo::ComputeOptions& opts) {
  Prepared p{geo::exact_degree_stratum(v, q, n, opts), {}};
  if (!std::holds_alternative<geo::ExplicitPermutation>(a.action)) {
    const auto report = geo::validate_automorphism(v, a, p.stratum.field, opts);
    if (!report.ok) {
      const auto& bad = *report.violation;
      throw ValidationError("automorphism " + bad.kind + (bad.point.empty() ? "" : " at " + bad.point) + ": " +
                            bad.message);
    }
  }
  p.phi = geo::apply_automorphism(a, p.stratum);
  return p;
}

Json series_json(const witt::IntSeries& s) { return s.coeffs; }

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
};

std::vector<Check> selftest_checks() {
  std::vector<Check> out;
  const auto p1 = geo::VarietySpec::projective_line();
  auto psi_check = [&](std::uint64_t q, std::int64_t lambda, unsigned n, const orb::K1Class& want) {
    const ff::FieldSpec f = ff::FieldSpec::parse(std::to_string(q));
    const auto F = ff::ExtField::build(f, 1);
    const auto k = orb::psi(p1, {geo::Scale{F.from_int(lambda)}}, f, n);
    out.push_back({"psi P1 scale " + std::to_string(lambda) + " q=" + std::to_string(q) + " n=" + std::to_string(n),
                   want.str(), k.str()});
  };
  psi_check(3, -1, 2, {2, -1, 1});
  psi_check(7, -1, 2, {2, -1, 1});
  psi_check(5, -1, 2, {2, 1, 0});
  psi_check(7, -1, 3, {3, 1, 0});
  psi_check(5, 2, 4, {4, 1, 2});

  const ff::FieldSpec f5{5, 1};
  const auto F5 = ff::ExtField::build(f5, 1);
  const auto E = geo::VarietySpec::weierstrass(F5.from_int(1), F5.zero());
  const auto Et = geo::VarietySpec::twist(F5.from_int(2), F5.from_int(1), F5.zero());
  out.push_back({"|E(F_25)|", "32", std::to_string(geo::count_points(E, f5, 2))});
  out.push_back({"|E'(F_5)|", "8", std::to_string(geo::count_points(Et, f5, 1))});
  {
    const auto prep = prepare(E, {geo::CurveDiagonal{F5.from_int(-1), F5.from_int(2)}}, f5, 2, {});
    const auto c = orb::orbit_census(prep.stratum, prep.phi);
    std::string got;
    for (const auto& [key, cnt] : c.counts) {
      got += "(" + std::to_string(key.first) + "," + std::to_string(key.second) + "):" + std::to_string(cnt) + " ";
    }
    out.push_back({"E census q=5 n=2", "(2,1):1 (4,0):3 ", got});
    out.push_back({"psi E diag q=5 n=2 twist", "1", std::to_string(orb::k1_class(prep.stratum, prep.phi).twist)});
  }
  {
    const ff::FieldSpec f3{3, 1};
    const auto b = geo::degree_census(p1, f3, 3);
    std::string got;
    for (const auto& k : orb::mult_of_eta_profile(b, 3)) got += k.str() + " ";
    out.push_back({"eta profile P1/F_3 N=3", "(+1, 0 mod 1) (-1, 0 mod 2) (+1, 0 mod 3) ", got});
    const auto z = witt::zeta_from_witt(witt::burnside_of_variety(p1, f3, 3), 3);
    out.push_back({"zeta P1/F_3", "[1,4,13,40]", Json(z.coeffs).dump()});
  }
  {
    using asmb::FinAssembler;
    using asmb::Policy;
    const auto sq = FinAssembler::from_data(fix::example_square());
    const auto s = FinAssembler::from_data(fix::sphere());
    auto rank = [](const FinAssembler& a) { return asmb::k0(a).str(); };
    out.push_back({"K0 square", "Z^3", rank(sq)});
    out.push_back({"K0 square minus sieve", "Z^2", rank(asmb::remove_sieve(sq, fix::square_sieve()))});
    out.push_back({"K0 sphere smash sphere", "Z^1", rank(asmb::smash_product(s, s, Policy::kExcludeDegenerateProductCovers))});
    out.push_back({"K0 sphere box sphere default", "Z^3", rank(asmb::box_product(s, s, Policy::kExcludeDegenerateProductCovers))});
    out.push_back({"K0 sphere box sphere literal", "Z^1", rank(asmb::box_product(s, s, Policy::kLiteral))});
  }
  return out;
}

void render_value(const Json& j, const std::string& prefix, std::ostream& out) {
  const bool flat_array = j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
  if (j.is_object()) {
    for (const auto& item : j.items()) render_value(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), out);
  } else if (j.is_array() && !flat_array) {
    for (std::size_t i = 0; i < j.size(); ++i) render_value(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << std::left << std::setw(40) << prefix << " " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& report, const Globals& g, std::ostream& out) {
  if (g.format == "table") {
    render_value(report, "", out);
  } else {
    out << report.dump(2) << "\n";
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Burnside and K1 invariants of varieties with automorphisms over finite fields"};
  app.name("dzeta");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--budget", g.budget, "Largest field size that may be enumerated")->check(CLI::PositiveNumber);
  app.add_option("--policy", g.policy, "Product cover policy")->check(CLI::IsMember({"default", "literal"}));
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--timing", g.timing, "Add wall-clock time to the report");

  std::string variety, automorphism, q_text, a_text, b_text, assembler_text;
  unsigned n = 1, N = 1, terms = 1;

  std::function<Json()> action;
  Json inputs;
  std::string command;
  std::string verdict;
  bool selftest_failed = false;

  auto* psi = app.add_subcommand("psi", "K1 class of an automorphism on points of exact degree n");
  psi->add_option("--variety", variety, "Variety JSON (file or inline)")->required();
  psi->add_option("--auto", automorphism, "Automorphism JSON (file or inline)")->required();
  psi->add_option("--q", q_text, "Base field: 7, 9, 3^2 or [3,2]")->required();
  psi->add_option("--n", n, "Degree")->required()->check(CLI::Range(1u, 64u));

  auto* profile = app.add_subcommand("psi-profile", "K1 classes for n = 1..N with a permutativity verdict");
  profile->add_option("--variety", variety)->required();
  profile->add_option("--auto", automorphism)->required();
  profile->add_option("--q", q_text)->required();
  profile->add_option("--N", N)->required()->check(CLI::Range(1u, 64u));

  auto* census = app.add_subcommand("census", "Orbit census of points of exact degree n");
  census->add_option("--variety", variety)->required();
  census->add_option("--auto", automorphism)->required();
  census->add_option("--q", q_text)->required();
  census->add_option("--n", n)->required()->check(CLI::Range(1u, 64u));

  auto* eta = app.add_subcommand("eta-profile", "Classes of the Frobenius-induced automorphism for n = 1..N");
  eta->add_option("--variety", variety)->required();
  eta->add_option("--q", q_text)->required();
  eta->add_option("--N", N)->required()->check(CLI::Range(1u, 64u));

  auto* zeta = app.add_subcommand("zeta", "Zeta series from the Burnside vector and from point counts");
  zeta->add_option("--variety", variety)->required();
  zeta->add_option("--q", q_text)->required();
  zeta->add_option("--terms", terms, "Highest power of t")->required()->check(CLI::Range(1u, 64u));

  auto* witt_cmd = app.add_subcommand("witt", "Big Witt vector arithmetic");
  witt_cmd->require_subcommand(1);
  auto* w_add = witt_cmd->add_subcommand("add", "a + b");
  auto* w_mul = witt_cmd->add_subcommand("mul", "a * b");
  auto* w_ghost = witt_cmd->add_subcommand("ghost", "Ghost components of a");
  auto* w_from = witt_cmd->add_subcommand("from-ghost", "Witt vector with ghost components a");
  for (auto* s : {w_add, w_mul}) {
    s->add_option("--a", a_text)->required();
    s->add_option("--b", b_text)->required();
  }
  w_ghost->add_option("--a", a_text)->required();
  w_from->add_option("--a", a_text)->required();

  auto* k0_cmd = app.add_subcommand("k0", "K0 of a finite assembler");
  k0_cmd->add_option("--assembler", assembler_text)->required();

  auto* product = app.add_subcommand("product", "Box or smash product of two assemblers");
  product->require_subcommand(1);
  auto* p_box = product->add_subcommand("box", "Box product");
  auto* p_smash = product->add_subcommand("smash", "Smash product");
  for (auto* s : {p_box, p_smash}) {
    s->add_option("--a", a_text)->required();
    s->add_option("--b", b_text)->required();
  }

  auto* selftest = app.add_subcommand("selftest", "Run the built-in fixture checks");

  std::vector<std::string> argv_store;
  argv_store.push_back("dzeta");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const geo::ComputeOptions opts = g.options();

    if (psi->parsed() || profile->parsed() || census->parsed()) {
      const ff::FieldSpec q = parse_q(q_text);
      const auto v = load_variety(variety, q);
      const auto a = load_auto(automorphism, q);
      inputs = {{"variety", io::variety_to_json(v)}, {"automorphism", io::automorphism_to_json(a)}, {"q", field_json(q)}};
      if (psi->parsed()) {
        command = "psi";
        inputs["n"] = n;
        action = [&, v, a, q] {
          const auto p = prepare(v, a, q, n, opts);
          const auto k = orb::k1_class(p.stratum, p.phi);
          const std::vector<orb::K1Class> one{k};
          verdict = orb::to_string(orb::permutativity_verdict(one));
          return Json{{"points", p.stratum.size()}, {"class", io::k1_to_json(k)}};
        };
      } else if (profile->parsed()) {
        command = "psi-profile";
        inputs["N"] = N;
        action = [&, v, a, q] {
          std::vector<orb::K1Class> classes;
          Json rows = Json::array();
          for (unsigned k = 1; k <= N; ++k) {
            const auto p = prepare(v, a, q, k, opts);
            classes.push_back(orb::k1_class(p.stratum, p.phi));
            rows.push_back({{"points", p.stratum.size()}, {"class", io::k1_to_json(classes.back())}});
          }
          verdict = orb::to_string(orb::permutativity_verdict(classes));
          return Json{{"classes", rows}};
        };
      } else {
        command = "census";
        inputs["n"] = n;
        action = [&, v, a, q] {
          const auto p = prepare(v, a, q, n, opts);
          const auto c = orb::orbit_census(p.stratum, p.phi);
          const auto k = orb::k1_class(p.stratum, p.phi);
          Json r{{"census", io::census_to_json(c)},
                 {"class", io::k1_to_json(k)},
                 {"class_from_census", io::k1_to_json(orb::census_to_class(c))}};
          try {
            r["su_special"] = io::k1_to_json(orb::su_special_reduction(c));
          } catch (const ValidationError& e) {
            r["su_special"] = {{"error", e.what()}};
          }
          const std::vector<orb::K1Class> one{k};
          verdict = orb::to_string(orb::permutativity_verdict(one));
          return r;
        };
      }
    } else if (eta->parsed() || zeta->parsed()) {
      const ff::FieldSpec q = parse_q(q_text);
      const auto v = load_variety(variety, q);
      inputs = {{"variety", io::variety_to_json(v)}, {"q", field_json(q)}};
      if (eta->parsed()) {
        command = "eta-profile";
        inputs["N"] = N;
        action = [&, v, q] {
          const auto b = geo::degree_census(v, q, N, opts);
          const auto classes = orb::mult_of_eta_profile(b, N);
          Json rows = Json::array();
          for (const auto& k : classes) rows.push_back(io::k1_to_json(k));
          verdict = orb::to_string(orb::permutativity_verdict(classes));
          return Json{{"degree_census", b}, {"classes", rows}};
        };
      } else {
        command = "zeta";
        inputs["terms"] = terms;
        action = [&, v, q] {
          const auto w = witt::burnside_of_variety(v, q, terms, opts);
          std::vector<std::int64_t> counts;
          for (unsigned k = 1; k <= terms; ++k) {
            const auto c = geo::count_points(v, q, k, opts);
            if (c > static_cast<std::uint64_t>(INT64_MAX)) throw ResourceError("point count exceeds 64-bit range");
            counts.push_back(static_cast<std::int64_t>(c));
          }
          const auto z1 = witt::zeta_from_witt(w, terms);
          const auto z2 = witt::zeta_exp_form(counts, terms);
          return Json{{"burnside", io::witt_to_json(w)},
                      {"point_counts", counts},
                      {"zeta", series_json(z1)},
                      {"zeta_from_counts", series_json(z2)},
                      {"consistent", z1.coeffs == z2.coeffs}};
        };
      }
    } else if (witt_cmd->parsed()) {
      auto witt_arg = [&](const std::string& text, const std::string& what) {
        return with_context(what, [&] { return io::parse_witt(load_json(text, what)); });
      };
      if (w_add->parsed() || w_mul->parsed()) {
        const bool add = w_add->parsed();
        command = add ? "witt add" : "witt mul";
        const auto a = witt_arg(a_text, "--a");
        const auto b = witt_arg(b_text, "--b");
        inputs = {{"a", io::witt_to_json(a)}, {"b", io::witt_to_json(b)}};
        action = [a, b, add] { return Json{{"witt", io::witt_to_json(add ? witt::witt_add(a, b) : witt::witt_mul(a, b))}}; };
      } else if (w_ghost->parsed()) {
        command = "witt ghost";
        const auto a = witt_arg(a_text, "--a");
        inputs = {{"a", io::witt_to_json(a)}};
        action = [a] { return Json{{"ghost", io::ghost_to_json(witt::ghost_of(a))}}; };
      } else {
        command = "witt from-ghost";
        const auto a = with_context("--a", [&] { return io::parse_ghost(load_json(a_text, "--a")); });
        inputs = {{"a", io::ghost_to_json(a)}};
        action = [a] { return Json{{"witt", io::witt_to_json(witt::from_ghost(a))}}; };
      }
    } else if (k0_cmd->parsed()) {
      command = "k0";
      const auto a = load_assembler(assembler_text, "--assembler", g);
      inputs = {{"assembler", io::assembler_to_json(a.to_data())}};
      action = [a] {
        const auto families = asmb::cover_closure(a);
        return Json{{"k0", io::abelian_group_to_json(asmb::k0(a))}, {"disjoint_covers", families.size()}};
      };
    } else if (product->parsed()) {
      const bool box = p_box->parsed();
      command = box ? "product box" : "product smash";
      const auto a = load_assembler(a_text, "--a", g);
      const auto b = load_assembler(b_text, "--b", g);
      const auto policy = product_policy(g);
      inputs = {{"a", io::assembler_to_json(a.to_data())},
                {"b", io::assembler_to_json(b.to_data())},
                {"policy", asmb::to_string(policy)}};
      action = [a, b, box, policy] {
        const auto r = box ? asmb::box_product(a, b, policy) : asmb::smash_product(a, b, policy);
        return Json{{"assembler", io::assembler_to_json(r.to_data())}, {"k0", io::abelian_group_to_json(asmb::k0(r))}};
      };
    } else if (selftest->parsed()) {
      command = "selftest";
      inputs = Json::object();
      action = [&] {
        Json rows = Json::array();
        bool all = true;
        for (const auto& c : selftest_checks()) {
          const bool ok = c.expected == c.actual;
          all = all && ok;
          rows.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", ok}});
        }
        selftest_failed = !all;
        verdict = all ? "PASS" : "FAIL";
        return Json{{"checks", rows}};
      };
    }

    const auto t0 = std::chrono::steady_clock::now();
    Json results = action();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Json report;
    report["command"] = command;
    report["inputs"] = inputs;
    report["results"] = results;
    if (!verdict.empty()) report["verdict"] = verdict;
    if (g.timing) report["timing"] = {{"seconds", seconds}};
    emit(report, g, out);
    return selftest_failed ? 1 : 0;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dzeta::cli
