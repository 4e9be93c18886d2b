#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/gluelab.hpp"
#include "baslab/hpoly.hpp"
#include "baslab/plambda.hpp"
#include "baslab/rootsys.hpp"
#include "baslab/weyl_oracle.hpp"

namespace baslab::selftest {

/// Portable across standard libraries: only the raw engine output is used,
/// never the std distributions, whose algorithms are unspecified.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
  }

  Rational rational(long bound, long max_den) {
    const long den = uniform(1, max_den);
    return make_rational(uniform(-bound * den, bound * den), den);
  }

  /// A random word of length up to twice the number of positive roots.
  WeylElement weyl(const RootSystem& rs) {
    const long len = uniform(0, 2 * static_cast<long>(rs.positive_coroots().size()));
    std::vector<int> word;
    for (long k = 0; k < len; ++k) word.push_back(static_cast<int>(uniform(0, static_cast<long>(rs.rank()) - 1)));
    return rs.from_word(word);
  }

  /// Up to five terms of total degree at most max_degree.
  HPoly hpoly(const RootSystem& rs, int max_degree = 3) {
    const std::size_t r = rs.rank();
    std::vector<SparsePoly<Rational>::Term> terms;
    const long count = uniform(1, 5);
    for (long t = 0; t < count; ++t) {
      Exponents e(r, 0);
      long budget = uniform(0, max_degree);
      while (budget-- > 0) ++e[static_cast<std::size_t>(uniform(0, static_cast<long>(r) - 1))];
      terms.emplace_back(std::move(e), rational(3, 3));
    }
    return HPoly(SparsePoly<Rational>::from_terms(r, std::move(terms)));
  }

  /// A third generic, a third on a shifted wall <a, x + rho> = 0, a third with
  /// <a, x + rho> a small positive integer, for a random positive coroot a.
  Weight point(const RootSystem& rs) {
    Weight x{std::vector<Rational>(rs.rank())};
    for (auto& c : x.coords) c = rational(4, 3);
    const long kind = uniform(0, 2);
    if (kind == 0) return x;
    const auto& coroots = rs.positive_coroots();
    const HElement& a = coroots[static_cast<std::size_t>(uniform(0, static_cast<long>(coroots.size()) - 1))];
    const Rational target = kind == 1 ? Rational(0) : Rational(uniform(1, 3));
    std::size_t i = 0;
    while (sgn(a.coords[i]) == 0) ++i;
    x.coords[i] += (target - pairing(a, x + rs.rho())) / a.coords[i];
    return x;
  }

  /// x with x + rho strictly antidominant.
  Weight antidominant_shifted(const RootSystem& rs) {
    Weight y{std::vector<Rational>(rs.rank())};
    for (auto& c : y.coords) c = -make_rational(uniform(1, 12), uniform(1, 3));
    return y - rs.rho();
  }

 private:
  std::mt19937_64 rng_;
};

struct Check {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;  // first failure
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;

  bool pass() const {
    for (const auto& s : suites)
      if (!s.pass()) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : suites) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : s.checks) {
        nlohmann::json j = {{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}};
        if (!c.pass) j["detail"] = c.detail;
        checks.push_back(j);
      }
      arr.push_back({{"suite", s.name}, {"pass", s.pass()}, {"checks", checks}});
    }
    return {{"seed", seed}, {"pass", pass()}, {"suites", arr}};
  }

  std::string to_text() const {
    std::string out;
    for (const auto& s : suites) {
      out += (s.pass() ? "PASS  " : "FAIL  ") + s.name + "\n";
      for (const auto& c : s.checks) {
        out += std::string(c.pass ? "  ok    " : "  FAIL  ") + c.name + " (" + std::to_string(c.cases) + ")";
        if (!c.pass) out += ": " + c.detail;
        out += "\n";
      }
    }
    out += pass() ? "selftest: all suites pass\n" : "selftest: FAILED\n";
    return out;
  }
};

struct Options {
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty: all
  bool corrupt = false;             // corrupts the comultiplication in the gluing suite
  std::size_t samples = 200;        // per system, for the twisted-action laws
  std::size_t points = 100;         // per system and weight, for the witness search
};

namespace detail {

// Runs body for `cases` cases, recording the first failure message.
inline Check run_check(std::string name, std::size_t cases, const std::function<std::string(std::size_t)>& body) {
  Check c{std::move(name), true, 0, ""};
  for (std::size_t k = 0; k < cases; ++k) {
    std::string failure;
    try {
      failure = body(k);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++c.cases;
    if (!failure.empty()) {
      c.pass = false;
      c.detail = failure;
      break;
    }
  }
  return c;
}

inline Weight weight_of(std::vector<long> v) {
  Weight w;
  for (long x : v) w.coords.emplace_back(x);
  return w;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weyl-group", "twisted-action", "p-lambda-structure",
                                              "witness", "oracle", "gluing"};
  return names;
}

inline SuiteReport weyl_group_suite(Sampler& rng) {
  SuiteReport s{"weyl-group", {}};
  const auto& systems = small_rank_systems();
  s.checks.push_back(detail::run_check("enumeration-matches-order", systems.size(), [&](std::size_t k) -> std::string {
    const RootSystem rs = RootSystem::parse(systems[k]);
    if (rs.enumerate_weyl().size() != rs.weyl_order()) return systems[k] + ": wrong group size";
    return "";
  }));
  s.checks.push_back(detail::run_check("longest-element-negates-rho", systems.size(), [&](std::size_t k) -> std::string {
    const RootSystem rs = RootSystem::parse(systems[k]);
    const WeylElement w0 = rs.longest_element();
    if (act_on_weight(w0, rs.rho()) != -rs.rho()) return systems[k] + ": w0(rho) != -rho";
    if (w0.length() != rs.positive_coroots().size()) return systems[k] + ": l(w0) != |positive coroots|";
    return "";
  }));
  s.checks.push_back(detail::run_check("reflections-are-involutions", systems.size(), [&](std::size_t k) -> std::string {
    const RootSystem rs = RootSystem::parse(systems[k]);
    for (std::size_t i = 0; i < rs.rank(); ++i)
      if (!compose(rs.simple_reflection(i), rs.simple_reflection(i)).is_identity()) return systems[k] + ": s_i^2 != 1";
    return "";
  }));
  s.checks.push_back(detail::run_check("chamber-reduction-lands-antidominant", systems.size(), [&](std::size_t k) -> std::string {
    const RootSystem rs = RootSystem::parse(systems[k]);
    for (int t = 0; t < 20; ++t) {
      const Weight x = rng.point(rs);
      auto [w, y] = rs.antidominant_chamber(x);
      if (!y.antidominant() || act_on_weight(w, y) != x) return systems[k] + ": bad chamber reduction of (" + join(x.coords) + ")";
    }
    return "";
  }));
  return s;
}

/// Group law, ring-map property, dot-action evaluation identity, and the
/// unexpanded evaluation path, on random (w, p, x).
inline SuiteReport twisted_action_suite(Sampler& rng, std::size_t samples) {
  SuiteReport s{"twisted-action", {}};
  const std::vector<std::string> systems{"A1", "A2", "B2", "A1xA1"};
  for (const auto& name : systems) {
    const RootSystem rs = RootSystem::parse(name);
    s.checks.push_back(detail::run_check("group-law " + name, samples, [&](std::size_t) -> std::string {
      const WeylElement u = rng.weyl(rs), v = rng.weyl(rs);
      const HPoly p = rng.hpoly(rs);
      if (twist(rs, u, twist(rs, v, p)) != twist(rs, compose(u, v), p))
        return "u = " + u.word_string() + ", v = " + v.word_string() + ", p = " + p.to_string();
      return "";
    }));
    s.checks.push_back(detail::run_check("ring-map " + name, samples, [&](std::size_t) -> std::string {
      const WeylElement w = rng.weyl(rs);
      const HPoly p = rng.hpoly(rs), q = rng.hpoly(rs);
      if (twist(rs, w, p * q) != twist(rs, w, p) * twist(rs, w, q) || twist(rs, w, p + q) != twist(rs, w, p) + twist(rs, w, q))
        return "w = " + w.word_string() + ", p = " + p.to_string() + ", q = " + q.to_string();
      return "";
    }));
    s.checks.push_back(detail::run_check("dot-action-evaluation " + name, samples, [&](std::size_t) -> std::string {
      const WeylElement w = rng.weyl(rs);
      const HPoly p = rng.hpoly(rs);
      const Weight x = rng.point(rs);
      const Rational lhs = twist(rs, w, p).evaluate(x);
      const Rational rhs = p.evaluate(act_on_weight(inverse(w), x + rs.rho()) - rs.rho());
      if (lhs != rhs) return "w = " + w.word_string() + ", p = " + p.to_string() + ", x = (" + join(x.coords) + ")";
      if (twist_evaluate(rs, w, p, x) != lhs) return "unexpanded evaluation differs at w = " + w.word_string();
      return "";
    }));
  }
  return s;
}

inline SuiteReport p_lambda_suite(Sampler& rng) {
  SuiteReport s{"p-lambda-structure", {}};
  // ranks <= 2 with coordinates <= 2 here; the full sweep is an acceptance criterion
  std::vector<std::pair<std::string, Weight>> cases;
  for (const std::string name : {"A1", "A2", "B2", "G2", "A1xA1"}) {
    const RootSystem rs = RootSystem::parse(name);
    const std::size_t r = rs.rank();
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<long> c;
      for (std::size_t i = 0, x = code; i < r; ++i, x /= 3) c.push_back(static_cast<long>(x % 3));
      cases.emplace_back(name, detail::weight_of(c));
    }
  }
  s.checks.push_back(detail::run_check("degree-equals-pairing-with-2rho", cases.size(), [&](std::size_t k) -> std::string {
    const PLambda p = build_p_lambda(RootSystem::parse(cases[k].first), cases[k].second);
    if (!degree_check(p)) return cases[k].first + " (" + join(cases[k].second.coords) + ")";
    return "";
  }));
  s.checks.push_back(detail::run_check("shifted-coroot-forms-divide", cases.size(), [&](std::size_t k) -> std::string {
    const PLambda p = build_p_lambda(RootSystem::parse(cases[k].first), cases[k].second);
    if (!divisibility_check(p)) return cases[k].first + " (" + join(cases[k].second.coords) + ")";
    return "";
  }));
  s.checks.push_back(detail::run_check("factorization-over-products", 6, [&](std::size_t) -> std::string {
    const std::vector<long> a{rng.uniform(0, 3)};
    const std::vector<long> b{rng.uniform(0, 2), rng.uniform(0, 2)};
    const HPoly p1 = build_p_lambda(RootSystem::parse("A1"), detail::weight_of(a)).expanded;
    const HPoly p2 = build_p_lambda(RootSystem::parse("A2"), detail::weight_of(b)).expanded;
    const HPoly p = build_p_lambda(RootSystem::parse("A1xA2"), detail::weight_of({a[0], b[0], b[1]})).expanded;
    if (p != p1.embed(3, 0) * p2.embed(3, 1)) return "A1xA2 at (" + std::to_string(a[0]) + "," + std::to_string(b[0]) + "," + std::to_string(b[1]) + ")";
    return "";
  }));
  s.checks.push_back(detail::run_check("twist-preserves-degree", 3, [&](std::size_t k) -> std::string {
    const std::string name = std::vector<std::string>{"A2", "B2", "G2"}[k];
    const RootSystem rs = RootSystem::parse(name);
    const PLambda p = build_p_lambda(rs, rs.rho());
    for (const WeylElement& w : rs.enumerate_weyl())
      if (twist(rs, w, p.expanded).degree() != p.expanded.degree()) return name + ": w = " + w.word_string();
    return "";
  }));
  return s;
}

inline SuiteReport witness_suite(Sampler& rng, std::size_t points) {
  SuiteReport s{"witness", {}};
  for (const auto& name : small_rank_systems()) {
    const RootSystem rs = RootSystem::parse(name);
    const std::vector<std::pair<std::string, Weight>> weights{
        {"rho", rs.rho()}, {"2rho", Rational(2) * rs.rho()}, {"omega1", rs.fundamental_weight(0)}};
    for (const auto& [wname, lambda] : weights) {
      const PLambda p = build_p_lambda(rs, lambda);
      s.checks.push_back(detail::run_check("certified-witness " + name + " " + wname, points, [&](std::size_t) -> std::string {
        const Weight x = rng.point(rs);
        const Witness w = find_witness(p, x);
        if (sgn(w.value) == 0 || twist_evaluate(rs, w.w, p.expanded, x) != w.value)
          return "x = (" + join(x.coords) + ")";
        return "";
      }));
    }
    const PLambda p = build_p_lambda(rs, rs.rho());
    s.checks.push_back(detail::run_check("nonvanishing-region " + name, 50, [&](std::size_t) -> std::string {
      const Weight x = rng.antidominant_shifted(rs);
      if (sgn(p.expanded.evaluate(x)) == 0) return "P vanishes at (" + join(x.coords) + ")";
      if (!find_witness(p, x).w.is_identity()) return "witness at (" + join(x.coords) + ") is not the identity";
      return "";
    }));
  }
  return s;
}

inline SuiteReport oracle_suite() {
  SuiteReport s{"oracle", {}};
  const std::vector<std::vector<int>> lambdas{{0}, {1}, {2}, {3}, {1, 1}, {2, 1}};
  s.checks.push_back(detail::run_check("euler-operator-formula", lambdas.size(), [&](std::size_t k) -> std::string {
    const auto r = oracle::oracle_verify(lambdas[k]);
    if (!r.pass || sgn(r.scalar) == 0) return "lambda = " + nlohmann::json(lambdas[k]).dump() + ": " + r.oracle_canonical;
    return "";
  }));
  s.checks.push_back(detail::run_check("fourier-is-an-involutive-automorphism", 2, [&](std::size_t j) -> std::string {
    using oracle::WeylOp;
    const std::vector<WeylOp> gens{WeylOp::x(2, j), WeylOp::y(2, j), WeylOp::dx(2, j), WeylOp::dy(2, j)};
    for (const WeylOp& g : gens)
      if (!(oracle::fourier(oracle::fourier(g, j), j) == g)) return "F^2 moves " + g.to_string();
    for (const WeylOp& a : gens)
      for (const WeylOp& b : gens)
        if (!(oracle::fourier(oracle::commutator(a, b), j) ==
              oracle::commutator(oracle::fourier(a, j), oracle::fourier(b, j))))
          return "commutator of " + a.to_string() + " and " + b.to_string();
    return "";
  }));
  return s;
}

inline SuiteReport gluing_suite(bool corrupt) {
  using namespace glue;
  SuiteReport s{"gluing", {}};
  const std::vector<std::string> names{"tildeA", "hatA", "A_free_truncated", "k"};
  for (const auto& name : names) {
    const FDAlgebra a = builtin(name);
    const auto modules = test_modules(a);
    std::vector<std::string> idem;
    for (const auto& e : a.idempotents()) idem.push_back(e.name);
    const Gluing g(a, idem);
    s.checks.push_back(detail::run_check("adjunction-triangle-identities " + name, modules.size(), [&](std::size_t k) -> std::string {
      for (std::size_t w = 0; w < g.size(); ++w)
        if (!coinduce_triangle_identities(a, g.corner(w), modules[k].second) ||
            !induce_triangle_identities(a, g.corner(w), modules[k].second))
          return modules[k].first + " at " + idem[w];
      return "";
    }));
    s.checks.push_back(detail::run_check("restriction-splits-push-functors " + name, modules.size(), [&](std::size_t k) -> std::string {
      for (std::size_t w = 0; w < g.size(); ++w) {
        const Corner& c = g.corner(w);
        const FDModule n = restrict_module(a, c, modules[k].second).module;
        if (!is_isomorphic(c.algebra, restrict_module(a, c, coinduce(a, c, n).module).module, n) ||
            !is_isomorphic(c.algebra, restrict_module(a, c, induce(a, c, n).module).module, n))
          return modules[k].first + " at " + idem[w];
      }
      return "";
    }));
    const GlueComonad comonad = build_comonad(g, modules, corrupt);
    s.checks.push_back(detail::run_check("comonad-axioms " + name, 1, [&](std::size_t) -> std::string {
      const AxiomReport r = check_comonad_axioms(comonad);
      return r.pass() ? "" : r.to_json().dump();
    }));
    s.checks.push_back(detail::run_check("comparison-functor-gives-coalgebras " + name, modules.size(), [&](std::size_t k) -> std::string {
      return check_coalgebra(g, comparison_functor(g, modules[k].second)) ? "" : modules[k].first;
    }));
    if (!g.faithful()) continue;
    s.checks.push_back(detail::run_check("hom-dimension-equality " + name, modules.size() * modules.size(), [&](std::size_t k) -> std::string {
      const auto& [n1, m1] = modules[k / modules.size()];
      const auto& [n2, m2] = modules[k % modules.size()];
      const std::size_t h = hom_basis(a, m1, m2).size();
      const std::size_t hc = hom_coalgebra(g, comparison_functor(g, m1), comparison_functor(g, m2)).size();
      if (h != hc) return n1 + " -> " + n2 + ": " + std::to_string(h) + " vs " + std::to_string(hc);
      return "";
    }));
    s.checks.push_back(detail::run_check("kernel-image-factorization " + name, modules.size() * modules.size(), [&](std::size_t k) -> std::string {
      const auto& [n1, m1] = modules[k / modules.size()];
      const auto& [n2, m2] = modules[k % modules.size()];
      const Coalgebra x = comparison_functor(g, m1), y = comparison_functor(g, m2);
      for (const Matrix& f : hom_basis(a, m1, m2))
        if (!kernel_cokernel_check(g, x, y, g.pull(m1, m2, f))) return n1 + " -> " + n2;
      return "";
    }));
  }
  return s;
}

/// Runs the selected suites; unknown names and an empty selection are usage
/// errors, raised before anything runs.
inline Report run(const Options& opt) {
  std::vector<std::string> selected = opt.suites;
  if (selected.empty()) selected = suite_names();
  for (const auto& n : selected) {
    bool known = false;
    for (const auto& k : suite_names()) known = known || k == n;
    if (!known) throw Error("unknown suite '" + n + "'");
  }
  Report report;
  report.seed = opt.seed;
  // a fresh sampler per suite keeps each suite's cases independent of the selection
  std::uint64_t salt = 0;
  for (const auto& name : suite_names()) {
    ++salt;
    bool chosen = false;
    for (const auto& n : selected) chosen = chosen || n == name;
    if (!chosen) continue;
    Sampler rng(opt.seed * 0x9E3779B97F4A7C15ull + salt);
    if (name == "weyl-group") report.suites.push_back(weyl_group_suite(rng));
    if (name == "twisted-action") report.suites.push_back(twisted_action_suite(rng, opt.samples));
    if (name == "p-lambda-structure") report.suites.push_back(p_lambda_suite(rng));
    if (name == "witness") report.suites.push_back(witness_suite(rng, opt.points));
    if (name == "oracle") report.suites.push_back(oracle_suite());
    if (name == "gluing") report.suites.push_back(gluing_suite(opt.corrupt));
  }
  return report;
}

}  // namespace baslab::selftest
