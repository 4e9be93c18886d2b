#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/gluelab.hpp"
#include "baslab/hpoly.hpp"
#include "baslab/plambda.hpp"
#include "baslab/rational.hpp"
#include "baslab/rootsys.hpp"
#include "baslab/selftest.hpp"
#include "baslab/weyl_oracle.hpp"

namespace baslab::cli {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"roots",     "plambda",     "witness",     "oracle",
                                              "glue-demo", "glue-homdim", "glue-axioms", "selftest"};
  return names;
}

/// A fully resolved invocation: defaults and the environment are already
/// folded in, so equal configs produce equal output.
struct RunConfig {
  std::string command;
  std::string type;
  std::vector<Rational> weight;
  std::vector<Rational> point;
  std::vector<int> factors;
  std::string example;
  std::string algebra;
  std::vector<std::string> modules;
  int cutoff = glue::kDefaultCutoff;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty: all
  bool corrupt = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  /// Sorted-key JSON; from_string inverts it.
  std::string to_string() const {
    auto rats = [](const std::vector<Rational>& v) {
      std::vector<std::string> s;
      for (const auto& q : v) s.push_back(baslab::to_string(q));
      return s;
    };
    nlohmann::json j = {{"command", command}, {"type", type},       {"weight", rats(weight)},
                        {"point", rats(point)}, {"factors", factors}, {"example", example},
                        {"algebra", algebra},   {"modules", modules}, {"cutoff", cutoff},
                        {"format", format},     {"seed", seed},       {"suites", suites},
                        {"corrupt", corrupt}};
    return j.dump();
  }

  static RunConfig from_string(const std::string& text) {
    const nlohmann::json j = glue::detail::parse_json(text);
    RunConfig c;
    try {
      c.command = j.at("command").get<std::string>();
      c.type = j.at("type").get<std::string>();
      for (const auto& s : j.at("weight")) c.weight.push_back(parse_rational(s.get<std::string>()));
      for (const auto& s : j.at("point")) c.point.push_back(parse_rational(s.get<std::string>()));
      c.factors = j.at("factors").get<std::vector<int>>();
      c.example = j.at("example").get<std::string>();
      c.algebra = j.at("algebra").get<std::string>();
      c.modules = j.at("modules").get<std::vector<std::string>>();
      c.cutoff = j.at("cutoff").get<int>();
      c.format = j.at("format").get<std::string>();
      c.seed = j.at("seed").get<std::uint64_t>();
      c.suites = j.at("suites").get<std::vector<std::string>>();
      c.corrupt = j.at("corrupt").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad run config: ") + e.what(), 0, 0);
    }
    bool known = false;
    for (const auto& n : command_names()) known = known || n == c.command;
    if (!known) throw ParseError("bad run config: unknown command '" + c.command + "'", 0, 0);
    return c;
  }
};

/// Thrown for bad command lines; carries the exit code CLI11 chose (0 for --help).
struct UsageExit {
  int code;
  std::string message;
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<int> parse_factors(const std::string& text) {
  std::vector<int> out;
  for (const Rational& q : parse_rational_list(text)) {
    if (!is_integer(q) || sgn(q) < 0 || q > 64) throw ParseError("factors must be integers in 0..64, got '" + text + "'", 1, 1);
    out.push_back(static_cast<int>(q.get_num().get_si()));
  }
  return out;
}

}  // namespace detail

/// Parses argv. "glue demo" is accepted for "glue-demo", and likewise for
/// homdim and axioms. Cutoff precedence: --cutoff, then BASLAB_CUTOFF, then 12.
inline RunConfig parse_args(std::vector<std::string> args) {
  if (args.size() > 2 && args[1] == "glue") {
    args[1] = "glue-" + args[2];
    args.erase(args.begin() + 2);
  }
  CLI::App app{"Root-system, U(h) and gluing computations", "baslab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.set_version_flag("--version", "baslab 1.0");

  std::string type, weight, point, factors, example, algebra, suites;
  std::vector<std::string> modules;
  std::optional<int> cutoff;
  std::uint64_t seed = 1;
  bool corrupt = false;

  auto* roots = app.add_subcommand("roots", "Cartan data, Weyl group order, positive coroots");
  roots->add_option("--type", type, "root system, e.g. A2 or A1xB2")->required();

  auto* plambda = app.add_subcommand("plambda", "factors and expansion of P_lambda with its structural checks");
  plambda->add_option("--type", type)->required();
  plambda->add_option("--weight", weight, "dominant integral weight, comma separated")->required();

  auto* witness = app.add_subcommand("witness", "a Weyl element w with F_w(P_lambda)(x) nonzero");
  witness->add_option("--type", type)->required();
  witness->add_option("--weight", weight)->required();
  witness->add_option("--point", point, "rational point x, comma separated")->required();

  auto* oracle = app.add_subcommand("oracle", "recompute P_lambda for SL(2)^n in the Weyl algebra");
  oracle->add_option("--factors", factors, "multidegree, e.g. 3 or 2,1")->required();

  std::vector<CLI::App*> glue_cmds;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"glue-demo", "corners, faithfulness, global dimension and comonad checks"},
           {"glue-homdim", "global dimension by minimal projective resolutions"},
           {"glue-axioms", "comonad axioms, adjunctions and coalgebra checks on a module set"}}) {
    auto* sub = app.add_subcommand(name, help);
    auto* ex = sub->add_option("--example", example, "tildeA, hatA, A_free_truncated or k");
    auto* al = sub->add_option("--algebra", algebra, "quiver JSON file");
    ex->excludes(al);
    sub->add_option("--cutoff", cutoff, "syzygy cutoff for periodicity detection")->check(CLI::PositiveNumber);
    if (name == "glue-axioms") {
      sub->add_option("--modules", modules, "module JSON files (default: built-in test set)");
      sub->add_flag("--corrupt", corrupt, "perturb the comultiplication (negative control)");
    }
    glue_cmds.push_back(sub);
  }

  auto* self = app.add_subcommand("selftest", "seeded invariant suites of every module");
  self->add_option("--seed", seed);
  auto* suites_opt = self->add_option("--suites", suites, "comma-separated suite names (default: all)");
  self->add_flag("--corrupt", corrupt, "perturb the comultiplication in the gluing suite");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    throw UsageExit{code == 0 ? 0 : 2, out.str() + err.str()};
  }

  RunConfig c;
  c.command = app.get_subcommands().front()->get_name();
  c.format = format;
  c.type = type;
  if (!type.empty()) {
    const RootSystem rs = RootSystem::parse(type);
    c.type = rs.label();
    if (!weight.empty()) c.weight = parse_weight(weight, rs.rank()).coords;
    if (!point.empty()) c.point = parse_weight(point, rs.rank()).coords;
  }
  if (!factors.empty()) c.factors = detail::parse_factors(factors);
  c.example = example;
  c.algebra = algebra;
  c.modules = modules;
  c.cutoff = cutoff ? *cutoff : glue::cutoff_from_env();
  c.seed = seed;
  c.corrupt = corrupt;
  if (suites_opt->count() > 0) {
    for (const auto& s : detail::split_commas(suites))
      if (!s.empty()) c.suites.push_back(s);
    if (c.suites.empty()) throw UsageExit{2, "selftest: empty suite selection\n"};
    for (const auto& s : c.suites) {
      bool known = false;
      for (const auto& n : selftest::suite_names()) known = known || n == s;
      if (!known) throw UsageExit{2, "selftest: unknown suite '" + s + "'\n"};
    }
  }
  for (auto* sub : glue_cmds)
    if (sub->parsed() && c.example.empty() && c.algebra.empty()) throw UsageExit{2, c.command + ": one of --example or --algebra is required\n"};
  return c;
}

namespace detail {

inline nlohmann::json rationals_json(const std::vector<Rational>& v) {
  std::vector<std::string> s;
  for (const auto& q : v) s.push_back(to_string(q));
  return s;
}

inline void emit(std::ostream& out, const RunConfig& c, const nlohmann::json& j, const std::string& text) {
  if (c.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

inline int run_roots(const RunConfig& c, std::ostream& out) {
  const RootSystem rs = RootSystem::parse(c.type);
  nlohmann::json coroots = nlohmann::json::array();
  std::string text = "type " + rs.label() + "\nrank " + std::to_string(rs.rank()) + "\ncartan\n";
  for (const auto& row : rs.cartan()) {
    std::string line;
    for (int v : row) line += (line.empty() ? "  " : " ") + std::to_string(v);
    text += line + "\n";
  }
  text += "weyl group order " + std::to_string(rs.weyl_order()) + "\npositive coroots (simple-coroot coordinates)\n";
  for (const auto& h : rs.positive_coroots()) {
    coroots.push_back(rationals_json(h.coords));
    text += "  (" + join(h.coords) + ")\n";
  }
  const WeylElement w0 = rs.longest_element();
  text += "longest element " + w0.word_string() + "\n";
  emit(out, c,
       {{"type", rs.label()},
        {"rank", rs.rank()},
        {"cartan", rs.cartan()},
        {"weyl_order", rs.weyl_order()},
        {"positive_coroots", coroots},
        {"rho", rationals_json(rs.rho().coords)},
        {"longest_element", {{"word", w0.word_string()}, {"matrix", matrix_json(w0.weight_matrix)}}}},
       text);
  return 0;
}

inline nlohmann::json plambda_json(const PLambda& p, bool degree_ok, bool div_ok) {
  return {{"type", p.rs.label()},
          {"lambda", rationals_json(p.lambda.coords)},
          {"factors", factors_json(p)},
          {"expanded", p.expanded.to_string()},
          {"degree", p.expanded.degree()},
          {"expected_degree", p.expected_degree()},
          {"degree_check", degree_ok},
          {"divisibility_check", div_ok}};
}

inline int run_plambda(const RunConfig& c, std::ostream& out) {
  const RootSystem rs = RootSystem::parse(c.type);
  const PLambda p = build_p_lambda(rs, Weight{c.weight});
  const bool degree_ok = degree_check(p);
  const bool div_ok = p.factors.empty() || divisibility_check(p);
  std::string text = p.expanded.to_string() + "\nfactors";
  if (p.factors.empty()) text += " (none)";
  for (const auto& f : p.factors) text += " (" + f.poly().to_string() + ")";
  text += "\ndegree " + std::to_string(p.expanded.degree()) + ", expected " + std::to_string(p.expected_degree()) +
          (degree_ok ? " ok" : " FAIL") + "\ndivisibility " + (div_ok ? "ok" : "FAIL") + "\n";
  emit(out, c, plambda_json(p, degree_ok, div_ok), text);
  return degree_ok && div_ok ? 0 : 1;
}

inline int run_witness(const RunConfig& c, std::ostream& out) {
  const RootSystem rs = RootSystem::parse(c.type);
  const PLambda p = build_p_lambda(rs, Weight{c.weight});
  const Weight x{c.point};
  const Witness w = find_witness(p, x);
  nlohmann::json j = {{"type", rs.label()},
                      {"lambda", rationals_json(p.lambda.coords)},
                      {"point", rationals_json(x.coords)},
                      {"expanded", p.expanded.to_string()},
                      {"degree", p.expanded.degree()},
                      {"value_at_point", to_string(p.expanded.evaluate(x))},
                      {"witness", witness_json(w)}};
  std::string text = "P_lambda(x) = " + to_string(p.expanded.evaluate(x)) + "\nwitness " + w.w.word_string() +
                     "\nvalue " + to_string(w.value) + "\nstrategy " + w.strategy + "\n";
  emit(out, c, j, text);
  return 0;
}

inline int run_oracle(const RunConfig& c, std::ostream& out) {
  const oracle::OracleReport r = oracle::oracle_verify(c.factors);
  std::string text = "lambda " + nlohmann::json(c.factors).dump() + "\ninvariant space dimension " +
                     std::to_string(r.dim_invariant_space) + "\nm(C) = " + r.oracle_canonical + "\nP_lambda = " +
                     r.formula + "\n" + (r.pass ? "match, scalar " + to_string(r.scalar) : std::string("NO MATCH")) + "\n";
  emit(out, c, r.to_json(), text);
  return r.pass ? 0 : 1;
}

inline std::pair<std::string, glue::FDAlgebra> load_algebra(const RunConfig& c) {
  if (!c.example.empty()) return {c.example, glue::builtin(c.example)};
  return {std::filesystem::path(c.algebra).stem().string(), glue::parse_algebra(glue::read_file(c.algebra))};
}

inline std::vector<std::string> idempotent_names(const glue::FDAlgebra& a) {
  std::vector<std::string> names;
  for (const auto& e : a.idempotents()) names.push_back(e.name);
  return names;
}

inline int run_glue_homdim(const RunConfig& c, std::ostream& out) {
  const auto [name, a] = load_algebra(c);
  const glue::GlobalDimension g = glue::global_dimension(a, c.cutoff);
  nlohmann::json j = g.to_json();
  j["algebra"] = name;
  j["cutoff"] = c.cutoff;
  std::string text = "gldim(" + name + ") = " + g.to_string();
  if (g.kind == glue::GlobalDimension::Kind::infinite_periodic) text += ", period " + std::to_string(g.period);
  emit(out, c, j, text + "\n");
  return 0;
}

struct GlueChecks {
  nlohmann::json json;
  std::string text;
  bool pass = true;
};

// Adjunctions, comonad axioms and coalgebra checks; Hom-dimension equality
// when the idempotents are faithful.
inline GlueChecks glue_checks(const glue::FDAlgebra& a, const std::vector<std::pair<std::string, glue::FDModule>>& modules,
                              bool corrupt) {
  using namespace glue;
  GlueChecks r;
  const Gluing g(a, idempotent_names(a));
  bool triangles = true, coalgebras = true;
  for (const auto& [n, m] : modules) {
    for (std::size_t w = 0; w < g.size(); ++w)
      triangles = triangles && coinduce_triangle_identities(a, g.corner(w), m) && induce_triangle_identities(a, g.corner(w), m);
    coalgebras = coalgebras && check_coalgebra(g, comparison_functor(g, m));
  }
  const AxiomReport axioms = check_comonad_axioms(build_comonad(g, modules, corrupt));
  std::vector<std::string> names;
  for (const auto& [n, m] : modules) names.push_back(n);
  r.json = {{"modules", names},
            {"triangle_identities", triangles},
            {"comonad_axioms", axioms.to_json()},
            {"coalgebra_checks", coalgebras},
            {"faithful", g.faithful()},
            {"corrupted", corrupt}};
  r.text = "modules " + join(names) + "\ntriangle identities " + (triangles ? "ok" : "FAIL") + "\ncomonad axioms " +
           (axioms.pass() ? "ok" : "FAIL") + "\n";
  for (const auto& row : axioms.rows)
    if (!row.pass())
      r.text += "  fails on " + row.module + "\n";
  r.text += std::string("coalgebra checks ") + (coalgebras ? "ok" : "FAIL") + "\n";
  r.pass = triangles && axioms.pass() && coalgebras;
  if (g.faithful()) {
    std::size_t mismatches = 0;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [n1, m1] : modules)
      for (const auto& [n2, m2] : modules) {
        const std::size_t h = hom_basis(a, m1, m2).size();
        const std::size_t hc = hom_coalgebra(g, comparison_functor(g, m1), comparison_functor(g, m2)).size();
        if (h != hc) ++mismatches;
        table.push_back({{"source", n1}, {"target", n2}, {"hom_A", h}, {"hom_coalgebra", hc}});
      }
    r.json["hom_dimensions"] = table;
    r.json["hom_dimension_mismatches"] = mismatches;
    r.text += "hom dimensions " + std::string(mismatches == 0 ? "agree" : "DISAGREE") + " on " +
              std::to_string(modules.size() * modules.size()) + " pairs\n";
    r.pass = r.pass && mismatches == 0;
  } else {
    r.text += "idempotents not faithful: hom dimensions not compared\n";
  }
  r.json["pass"] = r.pass;
  return r;
}

inline int run_glue_demo(const RunConfig& c, std::ostream& out) {
  using namespace glue;
  const auto [name, a] = load_algebra(c);
  const Gluing g(a, idempotent_names(a));
  nlohmann::json corners = nlohmann::json::array();
  std::string text = name + ": dim " + std::to_string(a.dim()) + ", basis " + join(a.labels()) + "\n";
  for (std::size_t w = 0; w < g.size(); ++w) {
    const Corner& cr = g.corner(w);
    std::vector<std::string> basis;
    for (std::size_t k = 0; k < cr.algebra.dim(); ++k) basis.push_back(a.format(cr.embedding.basis.col(k)));
    corners.push_back({{"idempotent", cr.name}, {"dim", cr.algebra.dim()}, {"basis", basis}});
    text += "corner " + cr.name + " A " + cr.name + ": dim " + std::to_string(cr.algebra.dim()) + ", basis " + join(basis) + "\n";
  }
  const GlobalDimension gd = global_dimension(a, c.cutoff);
  text += "faithful " + std::string(g.faithful() ? "yes" : "no") + "\ngldim " + gd.to_string();
  if (gd.kind == GlobalDimension::Kind::infinite_periodic) text += ", period " + std::to_string(gd.period);
  text += "\n";
  const GlueChecks checks = glue_checks(a, test_modules(a), false);
  nlohmann::json j = {{"algebra", name},
                      {"dim", a.dim()},
                      {"basis", a.labels()},
                      {"corners", corners},
                      {"faithful", g.faithful()},
                      {"global_dimension", gd.to_json()},
                      {"cutoff", c.cutoff},
                      {"checks", checks.json}};
  emit(out, c, j, text + checks.text);
  return checks.pass ? 0 : 1;
}

inline int run_glue_axioms(const RunConfig& c, std::ostream& out) {
  const auto [name, a] = load_algebra(c);
  std::vector<std::pair<std::string, glue::FDModule>> modules;
  if (c.modules.empty()) {
    modules = glue::test_modules(a);
  } else {
    for (const auto& path : c.modules)
      modules.emplace_back(std::filesystem::path(path).stem().string(), glue::parse_module(glue::read_file(path), a));
  }
  GlueChecks checks = glue_checks(a, modules, c.corrupt);
  checks.json["algebra"] = name;
  emit(out, c, checks.json, name + "\n" + checks.text);
  return checks.pass ? 0 : 1;
}

inline int run_selftest(const RunConfig& c, std::ostream& out) {
  selftest::Options opt;
  opt.seed = c.seed;
  opt.suites = c.suites;
  opt.corrupt = c.corrupt;
  const selftest::Report r = selftest::run(opt);
  emit(out, c, r.to_json(), r.to_text());
  return r.pass() ? 0 : 1;
}

}  // namespace detail

/// Exit status: 0 success, 1 verification failure or internal error,
/// 2 usage, parse, rank or domain error.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "roots") return detail::run_roots(c, out);
    if (c.command == "plambda") return detail::run_plambda(c, out);
    if (c.command == "witness") return detail::run_witness(c, out);
    if (c.command == "oracle") return detail::run_oracle(c, out);
    if (c.command == "glue-demo") return detail::run_glue_demo(c, out);
    if (c.command == "glue-homdim") return detail::run_glue_homdim(c, out);
    if (c.command == "glue-axioms") return detail::run_glue_axioms(c, out);
    if (c.command == "selftest") return detail::run_selftest(c, out);
    err << "error: unknown command '" << c.command << "'\n";
    return 2;
  } catch (const InternalError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const UsageExit& u) {
    (u.code == 0 ? out : err) << u.message;
    return u.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return run(c, out, err);
}

}  // namespace baslab::cli
