#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/matrix.hpp"

namespace baslab::glue {

/// Finite-dimensional left module: one d x d matrix per algebra basis
/// element.
struct FDModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;

  /// The matrix of a in coordinates of the algebra.
  Matrix act(const Vector& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (sgn(a[i]) != 0) m += action.at(i) * a[i];
    return m;
  }

  bool is_zero() const noexcept { return dim == 0; }
};

/// Checks the action against the structure constants and the unit.
inline void validate_module(const FDAlgebra& a, const FDModule& m) {
  if (m.action.size() != a.dim()) throw RankMismatch(a.dim(), m.action.size());
  for (const auto& x : m.action)
    if (x.rows() != m.dim || x.cols() != m.dim) throw Error("module action matrix has shape " + x.shape());
  if (m.act(a.unit()) != Matrix::identity(m.dim)) throw Error("unit does not act as the identity on the module");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (m.action[i] * m.action[j] != m.act(a.left(i).col(j)))
        throw Error("module action does not respect the product " + a.label(i) + "*" + a.label(j));
}

inline FDModule make_module(const FDAlgebra& a, std::size_t dim, std::vector<Matrix> action) {
  FDModule m{dim, std::move(action)};
  validate_module(a, m);
  return m;
}

inline FDModule zero_module(const FDAlgebra& a) { return FDModule{0, std::vector<Matrix>(a.dim(), Matrix(0, 0))}; }

/// A acting on itself by left multiplication.
inline FDModule regular_module(const FDAlgebra& a) {
  FDModule m{a.dim(), {}};
  for (std::size_t i = 0; i < a.dim(); ++i) m.action.push_back(a.left(i));
  return m;
}

inline FDModule direct_sum(const std::vector<FDModule>& parts, std::size_t algebra_dim) {
  FDModule m{0, {}};
  for (const auto& p : parts) m.dim += p.dim;
  for (std::size_t i = 0; i < algebra_dim; ++i) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action.at(i));
    m.action.push_back(block_diagonal(blocks));
  }
  return m;
}

struct Submodule {
  FDModule module;
  Embedding embedding;  // columns: basis of the submodule inside the ambient module
};

/// The submodule spanned by the columns of `spanning`; throws if the span is
/// not stable under the action.
inline Submodule submodule(const FDAlgebra& a, const FDModule& m, const Matrix& spanning) {
  Submodule s;
  s.embedding = spanning.cols() == 0 ? Embedding{Matrix(m.dim, 0), Matrix(0, m.dim)} : span_of(spanning);
  const Matrix& b = s.embedding.basis;
  s.module.dim = b.cols();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Matrix image = m.action[i] * b;
    const Matrix restricted = s.embedding.coords * image;
    if (b * restricted != image) throw Error("subspace is not a submodule");
    s.module.action.push_back(restricted);
  }
  return s;
}

struct QuotientModule {
  FDModule module;
  Quotient quotient;
};

/// M / span(columns of sub); sub must be a submodule.
inline QuotientModule quotient_module(const FDAlgebra& a, const FDModule& m, const Matrix& sub) {
  QuotientModule q;
  q.quotient = quotient_by(sub, m.dim);
  q.module.dim = q.quotient.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    // well defined only if the submodule maps into the kernel of the projection
    if (sub.cols() && !(q.quotient.projection * m.action[i] * sub).is_zero()) throw Error("quotient by a non-submodule");
    q.module.action.push_back(q.quotient.projection * m.action[i] * q.quotient.section);
  }
  return q;
}

/// Basis of Hom_A(M, N) as N.dim x M.dim matrices: the solutions of
/// N(g) f = f M(g) for the algebra generators g.
inline std::vector<Matrix> hom_basis(const FDAlgebra& a, const FDModule& m, const FDModule& n) {
  const std::size_t dm = m.dim, dn = n.dim;
  if (dm == 0 || dn == 0) return {};
  std::vector<Matrix> blocks;
  const Matrix im = Matrix::identity(dm), in = Matrix::identity(dn);
  for (std::size_t g : a.generators()) blocks.push_back(kron(im, n.action[g]) - kron(m.action[g].transpose(), in));
  const Matrix kernel = nullspace(vstack(blocks, dm * dn));
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < kernel.cols(); ++k) out.push_back(unvec(kernel.col(k), dn, dm));
  return out;
}

inline bool is_homomorphism(const FDAlgebra& a, const FDModule& m, const FDModule& n, const Matrix& f) {
  if (f.rows() != n.dim || f.cols() != m.dim) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (n.action[i] * f != f * m.action[i]) return false;
  return true;
}

/// Looks for an invertible element of Hom_A(M, N) among seeded random
/// combinations of a basis. Invertible maps form a Zariski-open subset of
/// the Hom space, so when M and N are isomorphic a random combination with
/// coefficients from a range much larger than the dimension is invertible
/// with high probability; `attempts` draws push the failure rate to
/// negligible. A "yes" is always exact.
inline std::optional<Matrix> find_isomorphism(const FDAlgebra& a, const FDModule& m, const FDModule& n,
                                              std::uint64_t seed = 1, int attempts = 16) {
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return Matrix(0, 0);
  const auto basis = hom_basis(a, m, n);
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-1000, 1000);
  for (int t = 0; t < attempts; ++t) {
    Matrix f(n.dim, m.dim);
    for (const auto& b : basis) f += b * Rational(coeff(rng));
    if (is_invertible(f)) return f;
  }
  return std::nullopt;
}

inline bool is_isomorphic(const FDAlgebra& a, const FDModule& m, const FDModule& n, std::uint64_t seed = 1) {
  return find_isomorphism(a, m, n, seed).has_value();
}

/// rad(A) M, as a spanning set of columns.
inline Matrix radical_of_module(const FDAlgebra& a, const FDModule& m) {
  const Matrix rad = a.radical();
  std::vector<Matrix> parts;
  for (std::size_t k = 0; k < rad.cols(); ++k) parts.push_back(m.act(rad.col(k)));
  if (parts.empty() || m.dim == 0) return Matrix(m.dim, 0);
  return column_basis(hstack(parts, m.dim));
}

/// M / rad(A) M
inline QuotientModule top(const FDAlgebra& a, const FDModule& m) {
  return quotient_module(a, m, radical_of_module(a, m));
}

/// The left ideal A e as a module.
inline Submodule projective_module(const FDAlgebra& a, const Vector& e) {
  return submodule(a, regular_module(a), a.right_multiplication(e));
}

/// A e / rad(A) e, the simple top of A e for a primitive idempotent e.
inline FDModule simple_module(const FDAlgebra& a, const Vector& e) {
  return top(a, projective_module(a, e).module).module;
}

}  // namespace baslab::glue
