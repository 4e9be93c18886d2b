// One PASS/FAIL line per acceptance criterion, with wall time against a limit.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "baslab/gluelab.hpp"
#include "baslab/plambda.hpp"
#include "baslab/selftest.hpp"
#include "baslab/weyl_oracle.hpp"

using namespace baslab;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<std::string()> body;  // empty string on success
};

std::string check_suite(const selftest::SuiteReport& s) {
  for (const auto& c : s.checks)
    if (!c.pass) return c.name + ": " + c.detail;
  return "";
}

// two budgets: 10 s for A1, 30 s for the A1xA1 products
std::string oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n <= 5; ++n) {
    const auto r = oracle::oracle_verify({n});
    if (!r.pass || sgn(r.scalar) == 0 || r.dim_invariant_space != 1) return "A1, n = " + std::to_string(n);
  }
  if (std::chrono::steady_clock::now() - start > std::chrono::seconds(10)) return "A1 part over 10 s";
  for (const std::vector<int>& l : {std::vector<int>{2, 1}, std::vector<int>{3, 2}}) {
    const auto r = oracle::oracle_verify(l);
    if (!r.pass || sgn(r.scalar) == 0) return "A1xA1, " + r.to_json()["lambda"].dump();
  }
  return "";
}

std::string paper_values() {
  using namespace glue;
  const FDAlgebra ta = tilde_a(), ha = hat_a();
  if (ta.dim() != 5) return "dim tildeA = " + std::to_string(ta.dim());
  if (ha.dim() != 4) return "dim hatA = " + std::to_string(ha.dim());
  const Corner c = corner_algebra(ta, "e2");
  if (c.algebra.dim() != 2) return "dim e2 tildeA e2 = " + std::to_string(c.algebra.dim());
  // basis {e2, y}: y^2 = 0 and y != 0, read off the structure constants
  const Vector y = c.algebra.basis_vector(1);
  if (!FDAlgebra::is_zero_vector(c.algebra.multiply(y, y))) return "y^2 != 0";
  if (c.algebra.multiply(c.algebra.unit(), y) != y) return "corner unit does not fix y";
  const GlobalDimension gt = global_dimension(ta, 12);
  if (gt.to_string() != "2") return "gldim tildeA = " + gt.to_string();
  const GlobalDimension gh = global_dimension(ha, 12);
  if (gh.kind != GlobalDimension::Kind::infinite_periodic || gh.period > 4) return "gldim hatA = " + gh.to_string();
  return "";
}

std::string comonad_axioms() {
  using namespace glue;
  for (const std::string name : {"hatA", "tildeA"}) {
    const FDAlgebra a = builtin(name);
    std::vector<std::string> idem;
    for (const auto& e : a.idempotents()) idem.push_back(e.name);
    const Gluing g(a, idem);
    const auto modules = test_modules(a);
    if (modules.size() < 6) return name + ": only " + std::to_string(modules.size()) + " test modules";
    const AxiomReport r = check_comonad_axioms(build_comonad(g, modules));
    if (!r.pass()) return name + ": " + r.to_json().dump();
    for (const auto& [n, m] : modules)
      if (!check_coalgebra(g, comparison_functor(g, m))) return name + ": coalgebra " + n;
    if (check_comonad_axioms(build_comonad(g, modules, true)).pass()) return name + ": corrupted comultiplication passed";
  }
  // the test set carries a non-split extension: P1 over hatA is not S1 + S2
  const FDAlgebra a = hat_a();
  const FDModule p1 = projective_module(a, a.idempotent("e1").element).module;
  const FDModule split = direct_sum({simple_module(a, a.idempotent("e1").element), simple_module(a, a.idempotent("e2").element)}, a.dim());
  if (is_isomorphic(a, p1, split)) return "P1 splits";
  return "";
}

std::string twisted_action_laws() {
  selftest::Sampler rng(kSeed);
  return check_suite(selftest::twisted_action_suite(rng, 200));
}

std::string witness_totality() {
  selftest::Sampler rng(kSeed + 1);
  const auto s = selftest::witness_suite(rng, 100);
  for (const auto& c : s.checks) {
    if (c.name.rfind("certified-witness", 0) == 0 && c.cases != 100) return c.name + ": ran " + std::to_string(c.cases);
    if (!c.pass) return c.name + ": " + c.detail;
  }
  return "";
}

std::string p_lambda_structure() {
  for (const auto& name : small_rank_systems()) {
    const RootSystem rs = RootSystem::parse(name);
    const std::size_t r = rs.rank();
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      Weight lambda;
      for (std::size_t i = 0, x = code; i < r; ++i, x /= 4) lambda.coords.emplace_back(static_cast<long>(x % 4));
      const PLambda p = build_p_lambda(rs, lambda);
      Rational expected(0);
      for (const HElement& a : rs.positive_coroots()) expected += pairing(a, lambda);
      if (p.expected_degree() != expected.get_num().get_ui() || !degree_check(p))
        return name + " degree at (" + join(lambda.coords) + ")";
      if (!divisibility_check(p)) return name + " divisibility at (" + join(lambda.coords) + ")";
    }
  }
  return "";
}

std::string hom_dimension_equality() {
  using namespace glue;
  const FDAlgebra a = hat_a();
  const Gluing g(a, std::vector<std::string>{"e1", "e2"});
  if (!g.faithful()) return "{e1, e2} not faithful";
  const auto modules = test_modules(a);
  if (modules.size() < 6) return "only " + std::to_string(modules.size()) + " test modules";
  for (const auto& [n1, m1] : modules)
    for (const auto& [n2, m2] : modules) {
      const std::size_t h = hom_basis(a, m1, m2).size();
      const std::size_t hc = hom_coalgebra(g, comparison_functor(g, m1), comparison_functor(g, m2)).size();
      if (h != hc) return n1 + " -> " + n2 + ": " + std::to_string(h) + " vs " + std::to_string(hc);
    }
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 10.0 + 30.0, oracle_equivalence},
      {2, "reference values of tildeA and hatA", 5.0, paper_values},
      {3, "comonad axioms and negative control", 5.0, comonad_axioms},
      {4, "twisted-action laws", 10.0, twisted_action_laws},
      {5, "witness totality", 30.0, witness_totality},
      {6, "P_lambda degree and divisibility", 30.0, p_lambda_structure},
      {7, "Hom-dimension equality on hatA", 10.0, hom_dimension_equality},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = c.body();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && secs > c.limit_s) failure = "over time limit";
    const bool pass = failure.empty();
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.limit_s, pass ? "" : ": ", failure.c_str());
  }
  return failures == 0 ? 0 : 1;
}
