#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/hpoly.hpp"
#include "baslab/matrix.hpp"
#include "baslab/plambda.hpp"
#include "baslab/rootsys.hpp"
#include "baslab/sparse_poly.hpp"

namespace baslab::oracle {

/// Variable slots inside one SL(2) factor of A^{2n}.
enum Slot : std::size_t { kX = 0, kY = 1, kDx = 2, kDy = 3 };
inline constexpr std::size_t kSlots = 4;

/// Image of each generator of a factor under the Fourier automorphism:
/// x -> dy, y -> -dx, dx -> -y, dy -> x. It preserves [d, u] = 1 and sends
/// the Euler operator E to -E - 2; applying it twice is the identity.
struct FourierImage {
  Slot target;
  int sign;
};
inline constexpr std::array<FourierImage, kSlots> kFourierConvention{{
    {kDy, +1},  // x
    {kDx, -1},  // y
    {kY, -1},   // dx
    {kX, +1},   // dy
}};

/// Normal-ordered element of the Weyl algebra of A^{2n}: in every monomial
/// the coordinates x_j, y_j stand left of the derivatives dx_j, dy_j.
/// Exponent slot 4j + s holds the power of generator s of factor j.
class WeylOp {
 public:
  WeylOp() = default;
  explicit WeylOp(std::size_t n) : poly_(kSlots * n), n_(n) {}

  static WeylOp constant(std::size_t n, const Rational& c) {
    WeylOp w(n);
    w.poly_ = SparsePoly<Rational>::constant(kSlots * n, c);
    return w;
  }

  static WeylOp generator(std::size_t n, std::size_t factor, Slot s) {
    if (factor >= n) throw Error("factor index out of range");
    Exponents e(kSlots * n, 0);
    e[kSlots * factor + s] = 1;
    WeylOp w(n);
    w.poly_ = SparsePoly<Rational>::monomial(std::move(e), Rational(1));
    return w;
  }
  static WeylOp x(std::size_t n, std::size_t j) { return generator(n, j, kX); }
  static WeylOp y(std::size_t n, std::size_t j) { return generator(n, j, kY); }
  static WeylOp dx(std::size_t n, std::size_t j) { return generator(n, j, kDx); }
  static WeylOp dy(std::size_t n, std::size_t j) { return generator(n, j, kDy); }

  /// E_j = x_j dx_j + y_j dy_j.
  static WeylOp euler(std::size_t n, std::size_t j) { return x(n, j) * dx(n, j) + y(n, j) * dy(n, j); }

  static WeylOp from_sparse(std::size_t n, SparsePoly<Rational> p) {
    if (p.nvars() != kSlots * n) throw Error("exponent length does not match 4n");
    WeylOp w(n);
    w.poly_ = std::move(p);
    return w;
  }

  std::size_t factors() const noexcept { return n_; }
  const SparsePoly<Rational>& sparse() const noexcept { return poly_; }
  const auto& terms() const noexcept { return poly_.terms(); }
  bool is_zero() const noexcept { return poly_.is_zero(); }

  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.n_ == b.n_ && a.poly_ == b.poly_; }
  friend WeylOp operator+(const WeylOp& a, const WeylOp& b) { return from_sparse(check(a, b).n_, a.poly_ + b.poly_); }
  friend WeylOp operator-(const WeylOp& a, const WeylOp& b) { return from_sparse(check(a, b).n_, a.poly_ - b.poly_); }
  friend WeylOp operator-(const WeylOp& a) { return from_sparse(a.n_, -a.poly_); }
  friend WeylOp operator*(const Rational& c, const WeylOp& a) { return from_sparse(a.n_, a.poly_.scaled(c)); }

  /// Normal-ordered product. Per coordinate pair (u, d),
  /// d^b u^c = sum_k C(b,k) c!/(c-k)! u^{c-k} d^{b-k}; distinct pairs commute.
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b) {
    const std::size_t n = check(a, b).n_;
    std::vector<SparsePoly<Rational>::Term> out;
    struct Choice {
      Integer coeff;
      int k;
    };
    std::vector<std::vector<Choice>> per_pair(2 * n);
    for (const auto& [ea, ca] : a.poly_.terms()) {
      for (const auto& [eb, cb] : b.poly_.terms()) {
        // pair p: coordinate slot u, derivative slot d
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t t = 0; t < 2; ++t) {
            const std::size_t u = kSlots * j + t, d = kSlots * j + 2 + t;
            const int bd = ea[d], cu = eb[u];
            auto& choices = per_pair[2 * j + t];
            choices.clear();
            Integer falling = 1;
            for (int k = 0; k <= std::min(bd, cu); ++k) {
              Integer binom;
              mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(bd), static_cast<unsigned long>(k));
              choices.push_back({binom * falling, k});
              falling *= (cu - k);
            }
          }
        // odometer over the choices of every pair
        std::vector<std::size_t> idx(2 * n, 0);
        while (true) {
          Exponents e(kSlots * n, 0);
          Rational c = ca * cb;
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < 2; ++t) {
              const std::size_t u = kSlots * j + t, d = kSlots * j + 2 + t;
              const Choice& ch = per_pair[2 * j + t][idx[2 * j + t]];
              e[u] = ea[u] + eb[u] - ch.k;
              e[d] = ea[d] - ch.k + eb[d];
              c *= ch.coeff;
            }
          out.emplace_back(std::move(e), std::move(c));
          std::size_t p = 0;
          while (p < idx.size() && ++idx[p] == per_pair[p].size()) idx[p++] = 0;
          if (p == idx.size()) break;
        }
      }
    }
    return from_sparse(n, SparsePoly<Rational>::from_terms(kSlots * n, std::move(out)));
  }

  WeylOp pow(unsigned k) const {
    WeylOp r = constant(n_, Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Lambda-grading: weight in factor j is deg x_j + deg y_j - deg dx_j - deg dy_j.
  static std::vector<int> monomial_weight(const Exponents& e, std::size_t n) {
    std::vector<int> w(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      w[j] = e[kSlots * j + kX] + e[kSlots * j + kY] - e[kSlots * j + kDx] - e[kSlots * j + kDy];
    return w;
  }

  /// The common weight of all terms; throws when the element is not homogeneous.
  std::vector<int> weight() const {
    if (!is_homogeneous()) throw Error("Weyl algebra element is not homogeneous");
    if (is_zero()) return std::vector<int>(n_, 0);
    return monomial_weight(poly_.terms().front().first, n_);
  }

  bool is_homogeneous() const {
    if (is_zero()) return true;
    const std::vector<int> w = monomial_weight(poly_.terms().front().first, n_);
    for (const auto& t : poly_.terms())
      if (monomial_weight(t.first, n_) != w) return false;
    return true;
  }

  bool has_derivatives() const {
    for (const auto& t : poly_.terms())
      for (std::size_t j = 0; j < n_; ++j)
        if (t.first[kSlots * j + kDx] || t.first[kSlots * j + kDy]) return true;
    return false;
  }

  std::string to_string() const {
    static const char* names[kSlots] = {"x", "y", "dx", "dy"};
    return format_terms(poly_, [](std::size_t i) { return names[i % kSlots] + std::to_string(i / kSlots + 1); });
  }

 private:
  static const WeylOp& check(const WeylOp& a, const WeylOp& b) {
    if (a.n_ != b.n_) throw RankMismatch(a.n_, b.n_);
    return a;
  }

  SparsePoly<Rational> poly_;
  std::size_t n_ = 0;
};

inline WeylOp commutator(const WeylOp& a, const WeylOp& b) { return a * b - b * a; }

/// Fourier automorphism of factor j, identity on the other factors.
inline WeylOp fourier(const WeylOp& a, std::size_t j) {
  const std::size_t n = a.factors();
  if (j >= n) throw Error("factor index out of range");
  std::array<WeylOp, kSlots> image;
  for (std::size_t s = 0; s < kSlots; ++s) {
    const auto& f = kFourierConvention[s];
    image[s] = Rational(f.sign) * WeylOp::generator(n, j, f.target);
  }
  std::array<std::vector<WeylOp>, kSlots> powers;
  for (std::size_t s = 0; s < kSlots; ++s) powers[s] = {WeylOp::constant(n, Rational(1))};
  auto power = [&](std::size_t s, int k) -> const WeylOp& {
    auto& pw = powers[s];
    while (pw.size() <= static_cast<std::size_t>(k)) pw.push_back(pw.back() * image[s]);
    return pw[static_cast<std::size_t>(k)];
  };
  std::vector<SparsePoly<Rational>> parts;
  for (const auto& [e, c] : a.terms()) {
    Exponents rest = e;
    for (std::size_t s = 0; s < kSlots; ++s) rest[kSlots * j + s] = 0;
    // the other factors commute with factor j, so keep them as a prefix
    WeylOp term = WeylOp::from_sparse(n, SparsePoly<Rational>::monomial(rest, c));
    for (std::size_t s = 0; s < kSlots; ++s) {
      const int k = e[kSlots * j + s];
      if (k) term = term * power(s, k);
    }
    parts.push_back(term.sparse());
  }
  return WeylOp::from_sparse(n, SparsePoly<Rational>::sum(kSlots * n, std::move(parts)));
}

/// Fourier transform in every factor: the automorphism attached to w0 for SL(2)^n.
inline WeylOp fourier_all(const WeylOp& a) {
  WeylOp out = a;
  for (std::size_t j = 0; j < a.factors(); ++j) out = fourier(out, j);
  return out;
}

/// Applies a differential operator to a polynomial (an element without derivatives).
inline WeylOp apply(const WeylOp& op, const WeylOp& f) {
  if (f.has_derivatives()) throw Error("apply: argument is not a polynomial");
  const WeylOp prod = op * f;
  std::vector<SparsePoly<Rational>::Term> kept;
  const std::size_t n = op.factors();
  for (const auto& [e, c] : prod.terms()) {
    bool plain = true;
    for (std::size_t j = 0; j < n && plain; ++j) plain = e[kSlots * j + kDx] == 0 && e[kSlots * j + kDy] == 0;
    if (plain) kept.emplace_back(e, c);
  }
  return WeylOp::from_sparse(n, SparsePoly<Rational>::from_terms(kSlots * n, std::move(kept)));
}

/// Homogeneous polynomial in the x_j, y_j of a fixed multidegree.
struct PolyVec {
  std::vector<int> degree;
  WeylOp value;
};

inline void require_multidegree(const std::vector<int>& lambda) {
  if (lambda.empty()) throw Error("multidegree needs at least one factor");
  for (int l : lambda)
    if (l < 0) throw Error("multidegree entries must be nonnegative");
}

/// Monomials prod_j x_j^{a_j} y_j^{l_j - a_j}, x-heavy first in each factor.
inline std::vector<PolyVec> graded_basis(const std::vector<int>& lambda) {
  require_multidegree(lambda);
  const std::size_t n = lambda.size();
  std::vector<PolyVec> basis;
  std::vector<int> a(lambda);  // current x-exponents
  while (true) {
    Exponents e(kSlots * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      e[kSlots * j + kX] = a[j];
      e[kSlots * j + kY] = lambda[j] - a[j];
    }
    basis.push_back({lambda, WeylOp::from_sparse(n, SparsePoly<Rational>::monomial(std::move(e), Rational(1)))});
    std::size_t p = n;
    while (p > 0 && a[p - 1] == 0) {
      a[p - 1] = lambda[p - 1];
      --p;
    }
    if (p == 0) return basis;
    --a[p - 1];
  }
}

/// A G-invariant element of O^lambda (x) O^dual, as coefficients over the
/// monomial bases of the two factors.
struct InvariantTensor {
  std::vector<int> lambda;
  std::vector<int> dual;
  std::vector<PolyVec> left_basis;
  std::vector<PolyVec> right_basis;
  Matrix coefficients;  // left x right
  std::size_t solution_dim = 0;
};

namespace detail {

// Matrix of `op` on the span of `basis` (columns are images).
inline Matrix operator_matrix(const WeylOp& op, const std::vector<PolyVec>& basis) {
  const std::size_t d = basis.size();
  Matrix m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const WeylOp img = apply(op, basis[k].value);
    for (const auto& [e, c] : img.terms()) {
      std::size_t row = d;
      for (std::size_t i = 0; i < d; ++i)
        if (basis[i].value.terms().front().first == e) {
          row = i;
          break;
        }
      if (row == d) throw InternalError("operator leaves the graded piece");
      m(row, k) = c;
    }
  }
  return m;
}

inline void normalize_integer(Vector& v) {
  Integer l = 1, g = 0;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  for (auto& q : v) q *= l;
  for (const auto& q : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  if (g != 0)
    for (auto& q : v) q /= g;
  for (const auto& q : v)
    if (sgn(q) != 0) {
      if (sgn(q) < 0)
        for (auto& r : v) r = -r;
      break;
    }
}

}  // namespace detail

/// Solves (X (x) 1 + 1 (x) X) C = 0 for X in {e_j = x_j dy_j, f_j = y_j dx_j}
/// over O^lambda (x) O^dual. The solution space must be one-dimensional; the
/// generator is scaled to coprime integers, the first entry in (a, b) order positive.
inline InvariantTensor invariant_element(const std::vector<int>& lambda) {
  require_multidegree(lambda);
  const std::size_t n = lambda.size();
  // lambda^vee = -w0(lambda); computed through the root system of SL(2)^n.
  std::string type;
  for (std::size_t j = 0; j < n; ++j) type += (j ? "xA1" : "A1");
  const RootSystem rs = RootSystem::parse(type);
  Weight lw{std::vector<Rational>(lambda.begin(), lambda.end())};
  const Weight dw = rs.dual_weight(lw);
  std::vector<int> dual;
  for (const auto& c : dw.coords) dual.push_back(static_cast<int>(c.get_num().get_si()));

  InvariantTensor t{lambda, dual, graded_basis(lambda), graded_basis(dual), Matrix(), 0};
  const std::size_t dl = t.left_basis.size(), dr = t.right_basis.size();
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < n; ++j) {
    for (const WeylOp& op : {WeylOp::x(n, j) * WeylOp::dy(n, j), WeylOp::y(n, j) * WeylOp::dx(n, j)}) {
      const Matrix ml = detail::operator_matrix(op, t.left_basis);
      const Matrix mr = detail::operator_matrix(op, t.right_basis);
      // vec(ml C + C mr^T) = (I kron ml + mr kron I) vec(C)
      blocks.push_back(kron(Matrix::identity(dr), ml) + kron(mr, Matrix::identity(dl)));
    }
  }
  const Matrix kernel = nullspace(vstack(blocks, dl * dr));
  t.solution_dim = kernel.cols();
  if (t.solution_dim != 1)
    throw InternalError("invariant space has dimension " + std::to_string(t.solution_dim) + ", expected 1");
  Vector c = kernel.col(0);
  detail::normalize_integer(c);
  t.coefficients = unvec(c, dl, dr);
  // sign: first nonzero C_ab in (a, b) lexicographic order is positive
  for (std::size_t a = 0, done = 0; a < dl && !done; ++a)
    for (std::size_t b = 0; b < dr && !done; ++b)
      if (sgn(t.coefficients(a, b)) != 0) {
        if (sgn(t.coefficients(a, b)) < 0) t.coefficients = -t.coefficients;
        done = 1;
      }
  return t;
}

/// m(C) = sum C_ab f_a F_{w0}(g_b), an element of weight 0.
inline WeylOp m_of_c(const InvariantTensor& t) {
  const std::size_t n = t.lambda.size();
  std::vector<SparsePoly<Rational>> parts;
  for (std::size_t b = 0; b < t.right_basis.size(); ++b) {
    const WeylOp g = fourier_all(t.right_basis[b].value);
    for (std::size_t a = 0; a < t.left_basis.size(); ++a) {
      const Rational& c = t.coefficients(a, b);
      if (sgn(c) == 0) continue;
      parts.push_back((c * (t.left_basis[a].value * g)).sparse());
    }
  }
  WeylOp m = WeylOp::from_sparse(n, SparsePoly<Rational>::sum(kSlots * n, std::move(parts)));
  if (m.weight() != std::vector<int>(n, 0)) throw InternalError("m(C) has nonzero weight");
  return m;
}

inline WeylOp m_of_c(const std::vector<int>& lambda) { return m_of_c(invariant_element(lambda)); }

/// q(E): substitute h_j -> E_j.
inline WeylOp euler_substitute(const HPoly& q) {
  const std::size_t n = q.rank();
  std::vector<std::vector<WeylOp>> powers(n, std::vector<WeylOp>{WeylOp::constant(n, Rational(1))});
  std::vector<SparsePoly<Rational>> parts;
  for (const auto& [e, c] : q.terms()) {
    WeylOp term = WeylOp::constant(n, c);
    for (std::size_t j = 0; j < n; ++j) {
      auto& pw = powers[j];
      while (pw.size() <= static_cast<std::size_t>(e[j])) pw.push_back(pw.back() * WeylOp::euler(n, j));
      if (e[j]) term = term * pw[static_cast<std::size_t>(e[j])];
    }
    parts.push_back(term.sparse());
  }
  return WeylOp::from_sparse(n, SparsePoly<Rational>::sum(kSlots * n, std::move(parts)));
}

struct EulerMatch {
  bool matched = false;
  Rational scalar;  // a = scalar * q(E) when matched, else 0
};

/// Tests a = c q(E) for a nonzero rational c.
inline EulerMatch match_euler(const WeylOp& a, const HPoly& q) {
  if (q.rank() != a.factors()) throw RankMismatch(a.factors(), q.rank());
  if (a.weight() != std::vector<int>(a.factors(), 0)) throw Error("match_euler: element does not have weight 0");
  const WeylOp qe = euler_substitute(q);
  if (qe.is_zero() || a.is_zero()) return {};
  const auto& [lead, lc] = qe.terms().front();
  const Rational c = a.sparse().coefficient(lead) / lc;
  if (sgn(c) == 0) return {};
  if (!(a == c * qe)) return {};
  return {true, c};
}

struct OracleReport {
  std::vector<int> lambda;
  std::size_t dim_invariant_space = 0;
  Rational scalar;
  bool pass = false;
  std::string formula;
  std::string oracle_canonical;

  nlohmann::json to_json() const {
    return {{"lambda", lambda},
            {"dim_invariant_space", dim_invariant_space},
            {"scalar", to_string(scalar)},
            {"pass", pass},
            {"formula", formula},
            {"oracle_canonical", oracle_canonical}};
  }
};

/// Recomputes P_lambda for SL(2)^n from the Weyl algebra and compares it
/// with the closed product formula, up to a nonzero scalar.
inline OracleReport oracle_verify(const std::vector<int>& lambda) {
  require_multidegree(lambda);
  std::string type;
  for (std::size_t j = 0; j < lambda.size(); ++j) type += (j ? "xA1" : "A1");
  const RootSystem rs = RootSystem::parse(type);
  const PLambda p = build_p_lambda(rs, Weight{std::vector<Rational>(lambda.begin(), lambda.end())});
  const InvariantTensor t = invariant_element(lambda);
  const WeylOp m = m_of_c(t);
  const EulerMatch match = match_euler(m, p.expanded);
  return {lambda, t.solution_dim, match.scalar, match.matched, p.expanded.to_string(), m.to_string()};
}

}  // namespace baslab::oracle
