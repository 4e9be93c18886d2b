#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/rational.hpp"
#include "baslab/rootsys.hpp"
#include "baslab/sparse_poly.hpp"

namespace baslab {

/// Element of U(h) = S(h): a polynomial in the simple-coroot variables
/// h1..hr with rational coefficients, read as a function on h*.
class HPoly {
 public:
  HPoly() = default;
  explicit HPoly(std::size_t rank) : poly_(rank) {}
  explicit HPoly(SparsePoly<Rational> p) : poly_(std::move(p)) {}

  static HPoly constant(std::size_t rank, const Rational& c) {
    return HPoly(SparsePoly<Rational>::constant(rank, c));
  }

  /// The variable h_{i+1}.
  static HPoly variable(std::size_t rank, std::size_t i) {
    if (i >= rank) throw Error("variable index out of range");
    Exponents e(rank, 0);
    e[i] = 1;
    return HPoly(SparsePoly<Rational>::monomial(std::move(e), Rational(1)));
  }

  /// sum_i h.coords[i] h_i + c
  static HPoly linear(const HElement& h, const Rational& c = Rational(0)) {
    const std::size_t r = h.rank();
    std::vector<SparsePoly<Rational>::Term> terms;
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(h.coords[i]) == 0) continue;
      Exponents e(r, 0);
      e[i] = 1;
      terms.emplace_back(std::move(e), h.coords[i]);
    }
    if (sgn(c) != 0) terms.emplace_back(Exponents(r, 0), c);
    return HPoly(SparsePoly<Rational>::from_terms(r, std::move(terms)));
  }

  std::size_t rank() const noexcept { return poly_.nvars(); }
  const SparsePoly<Rational>& sparse() const noexcept { return poly_; }
  const auto& terms() const noexcept { return poly_.terms(); }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  /// -1 for the zero polynomial.
  int degree() const { return poly_.degree(); }
  Rational coefficient(const Exponents& e) const { return poly_.coefficient(e); }

  friend bool operator==(const HPoly& a, const HPoly& b) { return a.poly_ == b.poly_; }

  friend HPoly operator+(const HPoly& a, const HPoly& b) { return HPoly(check(a, b).poly_ + b.poly_); }
  friend HPoly operator-(const HPoly& a, const HPoly& b) { return HPoly(check(a, b).poly_ - b.poly_); }
  friend HPoly operator*(const HPoly& a, const HPoly& b) { return HPoly(check(a, b).poly_ * b.poly_); }
  friend HPoly operator-(const HPoly& a) { return HPoly(-a.poly_); }
  friend HPoly operator*(const Rational& c, const HPoly& a) { return HPoly(a.poly_.scaled(c)); }

  HPoly pow(unsigned n) const {
    HPoly result = constant(rank(), Rational(1));
    HPoly base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  /// Value at the point with h_i = values[i].
  Rational evaluate_at(const std::vector<Rational>& values) const {
    if (values.size() != rank()) throw RankMismatch(rank(), values.size());
    // powers[i][k] = values[i]^k, filled lazily up to the max exponent in use
    std::vector<std::vector<Rational>> powers(rank(), std::vector<Rational>{Rational(1)});
    Rational total;
    Rational term;
    for (const auto& [e, c] : poly_.terms()) {
      term = c;
      for (std::size_t i = 0; i < rank(); ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * values[i]);
        term *= pw[static_cast<std::size_t>(e[i])];
      }
      total += term;
    }
    return total;
  }

  /// Substitutes <alpha_i^vee, x> = x.coords[i].
  Rational evaluate(const Weight& x) const {
    if (x.rank() != rank()) throw RankMismatch(rank(), x.rank());
    return evaluate_at(x.coords);
  }

  /// The algebra map sending h_i to images[i].
  HPoly substitute(const std::vector<HPoly>& images) const {
    if (images.size() != rank()) throw RankMismatch(rank(), images.size());
    const std::size_t target = images.empty() ? 0 : images.front().rank();
    std::vector<std::vector<HPoly>> powers(rank(), std::vector<HPoly>{constant(target, Rational(1))});
    std::vector<SparsePoly<Rational>> parts;
    parts.reserve(poly_.size());
    for (const auto& [e, c] : poly_.terms()) {
      HPoly term = constant(target, c);
      for (std::size_t i = 0; i < rank(); ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * images[i]);
        term = term * pw[static_cast<std::size_t>(e[i])];
      }
      parts.push_back(std::move(term.poly_));
    }
    return HPoly(SparsePoly<Rational>::sum(target, std::move(parts)));
  }

  /// Places this polynomial's variables at positions offset.. of a ring of
  /// rank `target_rank`.
  HPoly embed(std::size_t target_rank, std::size_t offset) const {
    if (offset + rank() > target_rank) throw Error("embedding out of range");
    std::vector<SparsePoly<Rational>::Term> terms;
    for (const auto& [e, c] : poly_.terms()) {
      Exponents big(target_rank, 0);
      for (std::size_t i = 0; i < rank(); ++i) big[offset + i] = e[i];
      terms.emplace_back(std::move(big), c);
    }
    return HPoly(SparsePoly<Rational>::from_terms(target_rank, std::move(terms)));
  }

  /// Canonical text form, e.g. "h1^2*h2 - 3/2*h1 + 1".
  std::string to_string() const {
    return format_terms(poly_, [](std::size_t i) { return "h" + std::to_string(i + 1); });
  }

  /// [{"exponents": [...], "coeff": "p/q"}, ...] in canonical order.
  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : poly_.terms()) arr.push_back({{"exponents", e}, {"coeff", baslab::to_string(c)}});
    return arr;
  }

 private:
  static const HPoly& check(const HPoly& a, const HPoly& b) {
    if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
    return a;
  }

  SparsePoly<Rational> poly_;
};

/// F_w on generators: h -> w(h) + <w(h) - h, rho>.
inline HPoly twist_generator(const RootSystem& rs, const WeylElement& w, std::size_t i) {
  const HElement h = rs.simple_coroot(i);
  const HElement wh = act_on_h(w, h);
  return HPoly::linear(wh, rs.height(wh) - rs.height(h));
}

/// The Fourier-twisted Weyl action on U(h), extended as an algebra map.
inline HPoly twist(const RootSystem& rs, const WeylElement& w, const HPoly& p) {
  if (w.rank() != rs.rank()) throw RankMismatch(rs.rank(), w.rank());
  if (p.rank() != rs.rank()) throw RankMismatch(rs.rank(), p.rank());
  std::vector<HPoly> images;
  for (std::size_t i = 0; i < rs.rank(); ++i) images.push_back(twist_generator(rs, w, i));
  return p.substitute(images);
}

/// evaluate(twist(w, p), x) without expanding the twisted polynomial: an
/// algebra map followed by evaluation is evaluation at the images' values.
inline Rational twist_evaluate(const RootSystem& rs, const WeylElement& w, const HPoly& p, const Weight& x) {
  if (p.rank() != rs.rank()) throw RankMismatch(rs.rank(), p.rank());
  if (x.rank() != rs.rank()) throw RankMismatch(rs.rank(), x.rank());
  std::vector<Rational> values;
  values.reserve(rs.rank());
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const HElement h = rs.simple_coroot(i);
    const HElement wh = act_on_h(w, h);
    values.push_back(pairing(wh, x) + rs.height(wh) - rs.height(h));
  }
  return p.evaluate_at(values);
}

namespace detail {

// Clears denominators: returns (integer polynomial, factor) with
// integer = factor * p.
inline std::pair<SparsePoly<Integer>, Integer> to_integer_poly(const SparsePoly<Rational>& p) {
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  std::vector<SparsePoly<Integer>::Term> terms;
  terms.reserve(p.size());
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, Integer(c.get_num() * (l / c.get_den())));
  return {SparsePoly<Integer>::from_terms(p.nvars(), std::move(terms)), l};
}


// Dense integer polynomial on the box prod_i [0, bound_i], stored flat with
// the first variable most significant, so flat order is lexicographic order.
// Used for products of linear forms and exact division by them, where the
// sparse form allocates per term.
class DenseIntPoly {
 public:
  explicit DenseIntPoly(std::vector<int> bounds) : bounds_(std::move(bounds)), strides_(bounds_.size()) {
    std::size_t n = 1;
    for (std::size_t i = bounds_.size(); i-- > 0;) {
      strides_[i] = n;
      n *= static_cast<std::size_t>(bounds_[i]) + 1;
    }
    cells_.resize(n);
  }

  static DenseIntPoly one(std::vector<int> bounds) {
    DenseIntPoly d(std::move(bounds));
    d.cells_[0] = 1;
    return d;
  }

  static std::size_t box_size(const std::vector<int>& bounds) {
    std::size_t n = 1;
    for (int b : bounds) {
      n *= static_cast<std::size_t>(b) + 1;
      if (n > (std::size_t{1} << 26)) return n;
    }
    return n;
  }

  static std::vector<int> exponent_bounds(const SparsePoly<Rational>& p) {
    std::vector<int> bounds(p.nvars(), 0);
    for (const auto& [e, c] : p.terms())
      for (std::size_t i = 0; i < e.size(); ++i) bounds[i] = std::max(bounds[i], e[i]);
    return bounds;
  }

  /// Clears denominators: the result is `scale` times p.
  static DenseIntPoly from_rational(const SparsePoly<Rational>& p, Integer& scale) {
    scale = 1;
    for (const auto& t : p.terms()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.second.get_den_mpz_t());
    DenseIntPoly d(exponent_bounds(p));
    for (const auto& [e, c] : p.terms()) {
      Integer& cell = d.cells_[d.index(e)];
      mpz_divexact(cell.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
      cell *= c.get_num();
    }
    return d;
  }

  std::size_t nvars() const noexcept { return bounds_.size(); }
  const std::vector<int>& bounds() const noexcept { return bounds_; }

  std::size_t index(const Exponents& e) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) k += static_cast<std::size_t>(e[i]) * strides_[i];
    return k;
  }

  /// this *= (c0 + sum_i c[i] h_i), in place; the box must leave room.
  /// Cells are visited from the top so each reads only unmodified lower cells.
  void multiply_linear(const Integer& c0, const std::vector<Integer>& c) {
    const std::size_t r = nvars();
    std::vector<int> e = bounds_;
    for (std::size_t k = cells_.size(); k-- > 0;) {
      mpz_ptr cell = cells_[k].get_mpz_t();
      mpz_mul(cell, cell, c0.get_mpz_t());
      for (std::size_t i = 0; i < r; ++i)
        if (e[i] > 0 && sgn(c[i]) != 0) mpz_addmul(cell, cells_[k - strides_[i]].get_mpz_t(), c[i].get_mpz_t());
      step_down(e);
    }
  }

  /// Quotient by c0 + sum_i c[i] h_i over the integers, if exact.
  std::optional<DenseIntPoly> divide_linear(const Integer& c0, const std::vector<Integer>& c) const {
    const std::size_t r = nvars();
    std::size_t v = r;
    for (std::size_t i = 0; i < r; ++i)
      if (sgn(c[i]) != 0) {
        v = i;
        break;
      }
    if (v == r) throw Error("divisor is not linear");
    const int top = bounds_[v];
    if (top == 0) return std::nullopt;  // p is free of v but the divisor is not

    // cells with e_v = 0: their offsets, and which lower neighbours exist
    std::vector<std::size_t> offsets;
    std::vector<unsigned char> has_lower;
    std::vector<int> e = bounds_;
    for (std::size_t k = cells_.size(); k-- > 0;) {
      if (e[v] == 0) {
        offsets.push_back(k);
        for (std::size_t i = 0; i < r; ++i) has_lower.push_back(e[i] > 0);
      }
      step_down(e);
    }

    DenseIntPoly q(bounds_);
    mpz_srcptr lead = c[v].get_mpz_t();
    Integer num;
    mpz_ptr n = num.get_mpz_t();
    // p_k = lead q_{k-1} + R q_k, so q_{k-1} = (p_k - R q_k) / lead and the
    // remainder p_0 - R q_0 must vanish.
    for (int k = top; k >= 0; --k) {
      const std::size_t layer = static_cast<std::size_t>(k) * strides_[v];
      for (std::size_t j = 0; j < offsets.size(); ++j) {
        const std::size_t at = layer + offsets[j];
        mpz_set(n, cells_[at].get_mpz_t());
        if (k < top) {
          mpz_submul(n, c0.get_mpz_t(), q.cells_[at].get_mpz_t());
          for (std::size_t i = 0; i < r; ++i)
            if (i != v && has_lower[j * r + i] && sgn(c[i]) != 0)
              mpz_submul(n, c[i].get_mpz_t(), q.cells_[at - strides_[i]].get_mpz_t());
        }
        if (mpz_sgn(n) == 0) continue;
        if (k == 0 || !mpz_divisible_p(n, lead)) return std::nullopt;
        mpz_divexact(q.cells_[at - strides_[v]].get_mpz_t(), n, lead);
      }
    }
    return q;
  }

  bool is_zero() const {
    for (const auto& x : cells_)
      if (sgn(x) != 0) return false;
    return true;
  }

  /// Sparse form of this / `divisor`, in canonical order.
  SparsePoly<Rational> to_sparse(const Integer& divisor = Integer(1)) const {
    const std::size_t r = nvars();
    // (degree, flat index); flat order is lex order within a degree
    std::vector<std::pair<int, std::size_t>> order;
    std::vector<int> e = bounds_;
    for (std::size_t k = cells_.size(); k-- > 0;) {
      if (sgn(cells_[k]) != 0) order.emplace_back(std::accumulate(e.begin(), e.end(), 0), k);
      step_down(e);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<SparsePoly<Rational>::Term> terms;
    terms.reserve(order.size());
    for (const auto& [deg, k] : order) {
      Exponents x(r);
      std::size_t rest = k;
      for (std::size_t i = 0; i < r; ++i) {
        x[i] = static_cast<int>(rest / strides_[i]);
        rest %= strides_[i];
      }
      Rational coeff(cells_[k], divisor);
      coeff.canonicalize();
      terms.emplace_back(std::move(x), std::move(coeff));
    }
    return SparsePoly<Rational>::from_sorted_terms(r, std::move(terms));
  }

 private:
  // Previous exponent vector in flat order.
  void step_down(std::vector<int>& e) const {
    for (std::size_t i = e.size(); i-- > 0;) {
      if (e[i] > 0) {
        --e[i];
        return;
      }
      e[i] = bounds_[i];
    }
  }

  std::vector<int> bounds_;
  std::vector<std::size_t> strides_;
  std::vector<Integer> cells_;
};

// Splits a linear form into a primitive integer form (c0, c) and the
// rational factor with form = factor * (c0 + sum c_i h_i).
inline Rational primitive_linear(const SparsePoly<Rational>& d, Integer& c0, std::vector<Integer>& c) {
  auto [dint, dscale] = to_integer_poly(d);
  Integer content = 0;
  for (const auto& t : dint.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.second.get_mpz_t());
  c0 = 0;
  c.assign(d.nvars(), Integer(0));
  for (const auto& [e, x] : dint.terms()) {
    bool constant = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) {
        c[i] = x / content;
        constant = false;
      }
    if (constant) c0 = x / content;
  }
  return Rational(content) / Rational(dscale);
}

}  // namespace detail

/// Exact division by a linear form. Returns the quotient q with p = d q, or
/// nothing when d does not divide p. Throws when d is zero or not of degree 1.
///
/// Works over the integers: d is made primitive and p integral, so by Gauss's
/// lemma any quotient is integral too. Writing d = c v + R with v the first
/// variable present in d, p = sum_k p_k v^k is divided synthetically,
/// q_{k-1} = (p_k - R q_k) / c, and the remainder p_0 - R q_0 must vanish.
inline std::optional<HPoly> divide_linear(const HPoly& d, const HPoly& p) {
  if (d.rank() != p.rank()) throw RankMismatch(d.rank(), p.rank());
  if (d.is_zero()) throw Error("divisor is zero");
  if (d.degree() != 1) throw Error("divisor is not linear: " + d.to_string());
  const std::size_t r = d.rank();
  if (p.is_zero()) return HPoly(r);

  if (detail::DenseIntPoly::box_size(detail::DenseIntPoly::exponent_bounds(p.sparse())) <= 4 * p.sparse().size() + 64) {
    Integer pscale;
    const auto dense = detail::DenseIntPoly::from_rational(p.sparse(), pscale);
    Integer c0;
    std::vector<Integer> c;
    const Rational dfactor = detail::primitive_linear(d.sparse(), c0, c);
    auto q = dense.divide_linear(c0, c);
    if (!q) return std::nullopt;
    // p = dense / pscale = dprim q / pscale and d = dfactor dprim
    const Rational factor = Rational(1) / (Rational(pscale) * dfactor);
    return HPoly(q->to_sparse().scaled(factor));
  }

  auto [dint, dscale] = detail::to_integer_poly(d.sparse());
  Integer content = 0;
  for (const auto& t : dint.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.second.get_mpz_t());
  std::vector<SparsePoly<Integer>::Term> prim;
  for (const auto& [e, c] : dint.terms()) prim.emplace_back(e, Integer(c / content));
  // d = (content / dscale) * dprim
  const SparsePoly<Integer> dprim = SparsePoly<Integer>::from_terms(r, std::move(prim));

  std::size_t v = r;
  Integer lead;
  for (const auto& [e, c] : dprim.terms()) {
    for (std::size_t i = 0; i < r; ++i)
      if (e[i] == 1 && i < v) {
        v = i;
        lead = c;
      }
  }
  // rest R: dprim without its v-term, as a polynomial in the same variables
  std::vector<SparsePoly<Integer>::Term> rest_terms;
  for (const auto& [e, c] : dprim.terms())
    if (e[v] == 0) rest_terms.emplace_back(e, c);
  const SparsePoly<Integer> rest = SparsePoly<Integer>::from_terms(r, std::move(rest_terms));

  auto [pint, pscale] = detail::to_integer_poly(p.sparse());
  // slices[k] = coefficient of v^k, with v's exponent zeroed
  int top = 0;
  for (const auto& [e, c] : pint.terms()) top = std::max(top, e[v]);
  std::vector<std::vector<SparsePoly<Integer>::Term>> buckets(static_cast<std::size_t>(top) + 1);
  for (const auto& [e, c] : pint.terms()) {
    Exponents f = e;
    f[v] = 0;
    buckets[static_cast<std::size_t>(e[v])].emplace_back(std::move(f), c);
  }
  std::vector<SparsePoly<Integer>> slices;
  for (auto& b : buckets) slices.push_back(SparsePoly<Integer>::from_terms(r, std::move(b)));

  std::vector<SparsePoly<Integer>> q(static_cast<std::size_t>(top), SparsePoly<Integer>(r));
  auto exact_div = [&](const SparsePoly<Integer>& num) -> std::optional<SparsePoly<Integer>> {
    std::vector<SparsePoly<Integer>::Term> out;
    out.reserve(num.size());
    for (const auto& [e, c] : num.terms()) {
      if (!mpz_divisible_p(c.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
      Integer qc;
      mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lead.get_mpz_t());
      out.emplace_back(e, std::move(qc));
    }
    return SparsePoly<Integer>::from_terms(r, std::move(out));
  };
  if (top == 0) return std::nullopt;  // p free of v but d involves v
  for (int k = top; k >= 1; --k) {
    SparsePoly<Integer> num = slices[static_cast<std::size_t>(k)];
    if (k < top) num = num - rest * q[static_cast<std::size_t>(k)];
    auto qk = exact_div(num);
    if (!qk) return std::nullopt;
    q[static_cast<std::size_t>(k - 1)] = std::move(*qk);
  }
  if (!(slices[0] - rest * q[0]).is_zero()) return std::nullopt;

  // p = (1/pscale) pint = (1/pscale) dprim * qint, and dprim = (dscale/content) d.
  const Rational factor = Rational(dscale) / Rational(content * pscale);
  std::vector<SparsePoly<Rational>::Term> terms;
  for (std::size_t k = 0; k < q.size(); ++k)
    for (const auto& [e, c] : q[k].terms()) {
      Exponents f = e;
      f[v] = static_cast<int>(k);
      Rational coeff = Rational(c) * factor;
      terms.emplace_back(std::move(f), std::move(coeff));
    }
  return HPoly(SparsePoly<Rational>::from_terms(r, std::move(terms)));
}

inline bool divides(const HPoly& d, const HPoly& p) { return divide_linear(d, p).has_value(); }

}  // namespace baslab
