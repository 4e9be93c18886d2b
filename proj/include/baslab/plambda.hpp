#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/hpoly.hpp"
#include "baslab/rootsys.hpp"

namespace baslab {

/// The linear form coroot + shift in U(h).
struct LinearFactor {
  HElement coroot;
  Rational shift;

  HPoly poly() const { return HPoly::linear(coroot, shift); }
};

/// P_lambda = prod over positive coroots a and i = 1..<a, lambda> of
/// (a + <a, rho> - i), normalized with leading constant 1.
struct PLambda {
  RootSystem rs;
  Weight lambda;
  std::vector<LinearFactor> factors;
  HPoly expanded;

  /// sum over positive coroots of <a, lambda>.
  std::size_t expected_degree() const { return factors.size(); }
};

inline void require_dominant_integral(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw RankMismatch(rs.rank(), lambda.rank());
  if (!lambda.integral()) throw Error("weight is not integral");
  if (!lambda.dominant()) throw Error("weight is not dominant");
}

inline PLambda build_p_lambda(const RootSystem& rs, const Weight& lambda) {
  require_dominant_integral(rs, lambda);
  PLambda p{rs, lambda, {}, HPoly(rs.rank())};
  for (const HElement& a : rs.positive_coroots()) {
    const Rational n = pairing(a, lambda);
    const Rational ht = rs.height(a);
    for (long i = 1; i <= n.get_num().get_si(); ++i) p.factors.push_back({a, ht - i});
  }
  // Factors have integer coefficients, so the product is formed densely over
  // the integers, one factor at a time, in a box sized by how many factors
  // involve each variable.
  const std::size_t r = rs.rank();
  std::vector<int> bounds(r, 0);
  for (const auto& f : p.factors)
    for (std::size_t i = 0; i < r; ++i)
      if (sgn(f.coroot.coords[i]) != 0) ++bounds[i];
  auto acc = detail::DenseIntPoly::one(bounds);
  std::vector<Integer> c(r);
  for (const auto& f : p.factors) {
    for (std::size_t i = 0; i < r; ++i) c[i] = f.coroot.coords[i].get_num();
    acc.multiply_linear(f.shift.get_num(), c);
  }
  p.expanded = HPoly(acc.to_sparse());
  return p;
}

inline bool degree_check(const PLambda& p) {
  if (p.factors.empty()) return p.expanded.degree() == 0;
  return p.expanded.degree() == static_cast<int>(p.expected_degree());
}

/// Every (a + <a, rho> - i - 1), 0 <= i < <a, lambda>, divides the expansion.
/// Same algorithm as divide_linear, with the expansion converted once.
inline bool divisibility_check(const PLambda& p) {
  if (p.expanded.is_zero()) return false;
  Integer scale;
  const auto dense = detail::DenseIntPoly::from_rational(p.expanded.sparse(), scale);
  Integer c0;
  std::vector<Integer> c;
  for (const HElement& a : p.rs.positive_coroots()) {
    const long n = pairing(a, p.lambda).get_num().get_si();
    const Rational ht = p.rs.height(a);
    for (long i = 0; i < n; ++i) {
      detail::primitive_linear(HPoly::linear(a, ht - i - 1).sparse(), c0, c);
      if (!dense.divide_linear(c0, c)) return false;
    }
  }
  return true;
}

struct Witness {
  WeylElement w;
  Rational value;        // evaluate(twist(w, P_lambda), x), never zero
  std::string strategy;  // "chamber(x+rho)", "chamber(x-rho)" or "exhaustive"
};

/// Finds w with F_w(P_lambda)(x) != 0. Candidates come from chamber
/// reduction of x + rho, then of x - rho, then from the whole group; a
/// candidate is returned only with its nonzero value.
inline Witness find_witness(const PLambda& p, const Weight& x, std::uint64_t enumeration_bound = 1152) {
  const RootSystem& rs = p.rs;
  if (x.rank() != rs.rank()) throw RankMismatch(rs.rank(), x.rank());
  auto attempt = [&](const WeylElement& w, const char* how) -> std::optional<Witness> {
    Rational v = twist_evaluate(rs, w, p.expanded, x);
    if (sgn(v) != 0) return Witness{w, std::move(v), how};
    return std::nullopt;
  };
  if (auto r = attempt(rs.antidominant_chamber(x + rs.rho()).first, "chamber(x+rho)")) return *r;
  if (auto r = attempt(rs.antidominant_chamber(x - rs.rho()).first, "chamber(x-rho)")) return *r;
  for (const WeylElement& w : rs.enumerate_weyl(enumeration_bound))
    if (auto r = attempt(w, "exhaustive")) return *r;
  throw InternalError("no Weyl group element makes P_lambda nonvanishing at (" + join(x.coords) + ")");
}

inline Witness find_witness(const RootSystem& rs, const Weight& lambda, const Weight& x) {
  return find_witness(build_p_lambda(rs, lambda), x);
}

inline nlohmann::json factors_json(const PLambda& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : p.factors) {
    std::vector<std::string> coroot;
    for (const auto& c : f.coroot.coords) coroot.push_back(to_string(c));
    arr.push_back({{"coroot", coroot}, {"shift", to_string(f.shift)}, {"form", f.poly().to_string()}});
  }
  return arr;
}

inline nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<long long> row;
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::json witness_json(const Witness& w) {
  return {{"word", w.w.word_string()},
          {"matrix", matrix_json(w.w.weight_matrix)},
          {"strategy", w.strategy},
          {"value_at_x", to_string(w.value)}};
}

}  // namespace baslab
