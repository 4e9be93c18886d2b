#pragma once

#include <string>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/glue/module.hpp"

namespace baslab::glue {

/// Two vertices 1, 2 with arrows x12 : 1 -> 2 and x21 : 2 -> 1.
inline Quiver two_cycle_quiver() {
  return Quiver{{"1", "2"}, {{"x12", 0, 1}, {"x21", 1, 0}}, {}};
}

/// x12*x21 = 0. Basis e1, e2, x12, x21, x21*x12; dimension 5.
inline Quiver tilde_a_quiver() {
  Quiver q = two_cycle_quiver();
  q.relations.push_back({{Rational(1), {"x12", "x21"}}});
  return q;
}

/// x12*x21 = x21*x12 = 0. Basis e1, e2, x12, x21; dimension 4.
inline Quiver hat_a_quiver() {
  Quiver q = tilde_a_quiver();
  q.relations.push_back({{Rational(1), {"x21", "x12"}}});
  return q;
}

inline FDAlgebra tilde_a() { return path_algebra(tilde_a_quiver()); }
inline FDAlgebra hat_a() { return path_algebra(hat_a_quiver()); }

/// The free path algebra of the two-cycle quiver cut off at paths of
/// length 3: basis e1, e2, x12, x21, x12*x21, x21*x12; dimension 6.
inline FDAlgebra free_truncated() { return path_algebra(two_cycle_quiver(), 3); }

/// The ground field as a one-vertex quiver.
inline FDAlgebra ground_field() { return path_algebra(Quiver{{"1"}, {}, {}}); }

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"tildeA", "hatA", "A_free_truncated", "k"};
  return names;
}

inline FDAlgebra builtin(const std::string& name) {
  if (name == "tildeA") return tilde_a();
  if (name == "hatA") return hat_a();
  if (name == "A_free_truncated") return free_truncated();
  if (name == "k") return ground_field();
  throw Error("unknown built-in algebra '" + name + "' (expected tildeA, hatA, A_free_truncated or k)");
}

namespace detail {

// "e1" -> "1"
inline std::string vertex_of(const std::string& idempotent) {
  return idempotent.size() > 1 && idempotent[0] == 'e' ? idempotent.substr(1) : idempotent;
}

}  // namespace detail

/// Simples, indecomposable projectives, the regular module, the sum of the
/// simples (when there are several), and P / rad^2 P for every projective where that differs from P.
inline std::vector<std::pair<std::string, FDModule>> test_modules(const FDAlgebra& a) {
  std::vector<std::pair<std::string, FDModule>> out;
  std::vector<FDModule> simples;
  for (const auto& e : a.idempotents()) {
    simples.push_back(simple_module(a, e.element));
    out.emplace_back("S" + detail::vertex_of(e.name), simples.back());
  }
  for (const auto& e : a.idempotents())
    out.emplace_back("P" + detail::vertex_of(e.name), projective_module(a, e.element).module);
  out.emplace_back("A", regular_module(a));
  if (simples.size() > 1) {
    std::string sum_name;
    for (const auto& e : a.idempotents()) sum_name += (sum_name.empty() ? "S" : "+S") + detail::vertex_of(e.name);
    out.emplace_back(sum_name, direct_sum(simples, a.dim()));
  }
  for (const auto& e : a.idempotents()) {
    const std::string v = detail::vertex_of(e.name);
    const FDModule p = projective_module(a, e.element).module;
    const Matrix rad = radical_of_module(a, p);
    const FDModule r = submodule(a, p, rad).module;
    const Matrix rad2_in_r = radical_of_module(a, r);
    const Matrix rad2 = rad2_in_r.cols() ? submodule(a, p, rad).embedding.basis * rad2_in_r : Matrix(p.dim, 0);
    if (rad2.cols() == 0) continue;
    out.emplace_back("P" + v + "/rad2", quotient_module(a, p, rad2).module);
  }
  return out;
}

}  // namespace baslab::glue
