#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/rational.hpp"

namespace baslab {

using Exponents = std::vector<int>;

struct ExponentHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int x : e) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded-lex, largest first: total degree, then lexicographic with the
/// first variable most significant.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial storage: terms kept sorted by GrlexGreater, no zero
/// coefficients. Multiplying every term by a fixed monomial preserves the
/// order, so products are built from sorted merges.
template <class Coeff>
class SparsePoly {
 public:
  using Term = std::pair<Exponents, Coeff>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const Coeff& c) {
    SparsePoly p(nvars);
    if (sgn(c) != 0) p.terms_.emplace_back(Exponents(nvars, 0), c);
    return p;
  }

  static SparsePoly monomial(Exponents e, const Coeff& c) {
    SparsePoly p(e.size());
    if (sgn(c) != 0) p.terms_.emplace_back(std::move(e), c);
    return p;
  }

  /// Builds from unsorted terms; merges duplicates and drops zeros.
  static SparsePoly from_terms(std::size_t nvars, std::vector<Term> terms) {
    for (const auto& t : terms)
      if (t.first.size() != nvars) throw Error("exponent length does not match variable count");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return GrlexGreater{}(a.first, b.first); });
    SparsePoly p(nvars);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
    }
    p.drop_zeros();
    return p;
  }

  /// Trusts that `terms` is already in canonical order with no zeros.
  static SparsePoly from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
    SparsePoly p(nvars);
    p.terms_ = std::move(terms);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.front().first); }

  Coeff coefficient(const Exponents& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& k) { return GrlexGreater{}(t.first, k); });
    if (it != terms_.end() && it->first == e) return it->second;
    return Coeff(0);
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// p * c * x^e
  SparsePoly times_term(const Exponents& e, const Coeff& c) const {
    SparsePoly out(nvars_);
    if (sgn(c) == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& [exp, coeff] : terms_) {
      Exponents shifted = exp;
      for (std::size_t i = 0; i < nvars_; ++i) shifted[i] += e[i];
      out.terms_.emplace_back(std::move(shifted), coeff * c);
    }
    return out;
  }

  SparsePoly scaled(const Coeff& c) const {
    SparsePoly out(nvars_);
    if (sgn(c) == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.second *= c;
    return out;
  }

  /// a + sign * b
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, int sign = 1) {
    if (a.nvars_ != b.nvars_) throw Error("polynomial variable count mismatch");
    SparsePoly out(a.nvars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    const GrlexGreater greater;
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && greater(i->first, j->first))) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || greater(j->first, i->first)) {
        out.terms_.emplace_back(j->first, sign > 0 ? Coeff(j->second) : Coeff(-j->second));
        ++j;
      } else {
        Coeff c = sign > 0 ? Coeff(i->second + j->second) : Coeff(i->second - j->second);
        if (sgn(c) != 0) out.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Sum of many polynomials by pairwise merging.
  static SparsePoly sum(std::size_t nvars, std::vector<SparsePoly> parts) {
    if (parts.empty()) return SparsePoly(nvars);
    while (parts.size() > 1) {
      std::vector<SparsePoly> next;
      next.reserve((parts.size() + 1) / 2);
      for (std::size_t k = 0; k + 1 < parts.size(); k += 2) next.push_back(merge(parts[k], parts[k + 1]));
      if (parts.size() % 2) next.push_back(std::move(parts.back()));
      parts = std::move(next);
    }
    return std::move(parts.front());
  }

  /// Commutative product. Short factors are handled by merging shifted
  /// copies; longer ones accumulate into a hash table keyed by exponents.
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.nvars_ != b.nvars_) throw Error("polynomial variable count mismatch");
    const SparsePoly& big = a.size() >= b.size() ? a : b;
    const SparsePoly& small = a.size() >= b.size() ? b : a;
    if (small.size() <= 8) {
      std::vector<SparsePoly> parts;
      parts.reserve(small.size());
      for (const auto& [e, c] : small.terms_) parts.push_back(big.times_term(e, c));
      return sum(a.nvars_, std::move(parts));
    }
    std::unordered_map<Exponents, Coeff, ExponentHash> acc;
    acc.reserve(big.size() * 4);
    Exponents key(a.nvars_);
    Coeff prod;
    for (const auto& [ea, ca] : small.terms_)
      for (const auto& [eb, cb] : big.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) key[i] = ea[i] + eb[i];
        prod = ca * cb;
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, prod);
        else
          it->second += prod;
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc) terms.emplace_back(e, std::move(c));
    return from_terms(a.nvars_, std::move(terms));
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, 1); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, -1); }
  friend SparsePoly operator-(const SparsePoly& a) { return a.scaled(Coeff(-1)); }

 private:
  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return sgn(t.second) == 0; }),
                 terms_.end());
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Renders "c*v1^2*v2 - 3/2*v1 + 1" in the stored (graded-lex) order.
template <class NameFn>
std::string format_terms(const SparsePoly<Rational>& p, NameFn&& name) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += name(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    std::string body;
    if (mono.empty())
      body = to_string(mag);
    else if (mag == 1)
      body = mono;
    else
      body = to_string(mag) + "*" + mono;
    if (first)
      out += (sgn(c) < 0 ? "-" : "") + body;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace baslab
