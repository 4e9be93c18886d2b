#pragma once

#include <cstddef>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/glue/module.hpp"
#include "baslab/matrix.hpp"

// The three functors attached to an idempotent e of A, with B = eAe:
//   restrict   F^*  : A-mod -> B-mod,  M |-> eM
//   coinduce   F_*  : B-mod -> A-mod,  N |-> Hom_B(eA, N)
//   induce     F_!  : B-mod -> A-mod,  N |-> Ae (x)_B N
// with adjunctions F_! -| F^* -| F_*.

namespace baslab::glue {

struct Restriction {
  FDModule module;     // eM over eAe
  Matrix inclusion;    // eM -> M
  Matrix projection;   // M -> eM, x |-> e x; projection * inclusion = id
};

inline Restriction restrict_module(const FDAlgebra& a, const Corner& c, const FDModule& m) {
  validate_module(a, m);
  Restriction r;
  const Matrix em = m.act(c.idempotent);
  const Embedding sub = m.dim == 0 ? Embedding{Matrix(0, 0), Matrix(0, 0)} : span_of(em);
  r.inclusion = sub.basis;
  r.projection = sub.coords * em;
  r.module.dim = sub.dim();
  for (std::size_t i = 0; i < c.algebra.dim(); ++i)
    r.module.action.push_back(r.projection * m.act(c.embedding.basis.col(i)) * r.inclusion);
  return r;
}

inline Matrix restrict_morphism(const Restriction& from, const Restriction& to, const Matrix& f) {
  return to.projection * f * from.inclusion;
}

namespace detail {

// left action of B on eA, in coordinates of eA
inline Matrix corner_on_row_ideal(const FDAlgebra& a, const Corner& c, std::size_t i) {
  return c.row_ideal.coords * a.left_multiplication(c.embedding.basis.col(i)) * c.row_ideal.basis;
}

// right action of A on eA
inline Matrix algebra_on_row_ideal(const FDAlgebra& a, const Corner& c, std::size_t i) {
  return c.row_ideal.coords * a.right_multiplication(a.basis_vector(i)) * c.row_ideal.basis;
}

// right action of B on Ae
inline Matrix corner_on_col_ideal(const FDAlgebra& a, const Corner& c, std::size_t i) {
  return c.col_ideal.coords * a.right_multiplication(c.embedding.basis.col(i)) * c.col_ideal.basis;
}

// left action of A on Ae
inline Matrix algebra_on_col_ideal(const FDAlgebra& a, const Corner& c, std::size_t i) {
  return c.col_ideal.coords * a.left(i) * c.col_ideal.basis;
}

}  // namespace detail

struct Coinduction {
  FDModule module;     // Hom_B(eA, N) over A
  Embedding maps;      // solution space inside vec(N.dim x dim eA)
  Matrix evaluation;   // phi |-> phi(e), into N
  std::size_t target_dim = 0;
  std::size_t ideal_dim = 0;  // dim eA
};

inline Coinduction coinduce(const FDAlgebra& a, const Corner& c, const FDModule& n) {
  validate_module(c.algebra, n);
  const std::size_t k = c.row_ideal.dim(), d = n.dim;
  Coinduction out;
  out.target_dim = d;
  out.ideal_dim = k;
  if (d == 0 || k == 0) {
    out.maps = Embedding{Matrix(d * k, 0), Matrix(0, d * k)};
    out.module = zero_module(a);
    out.evaluation = Matrix(d, 0);
    return out;
  }
  // phi (d x k) is B-linear: N(b) phi = phi L_b on eA
  std::vector<Matrix> eqs;
  const Matrix ik = Matrix::identity(k), id = Matrix::identity(d);
  for (std::size_t i = 0; i < c.algebra.dim(); ++i)
    eqs.push_back(kron(ik, n.action[i]) - kron(detail::corner_on_row_ideal(a, c, i).transpose(), id));
  const Matrix kernel = nullspace(vstack(eqs, d * k));
  out.maps = kernel.cols() == 0 ? Embedding{Matrix(d * k, 0), Matrix(0, d * k)} : span_of(kernel);
  // (a phi)(x) = phi(x a)
  out.module.dim = out.maps.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    out.module.action.push_back(out.maps.coords * kron(detail::algebra_on_row_ideal(a, c, i).transpose(), id) *
                                out.maps.basis);
  const Vector e_coords = c.row_ideal.coords * c.idempotent;
  out.evaluation = Matrix(d, out.maps.dim());
  for (std::size_t j = 0; j < out.maps.dim(); ++j)
    out.evaluation.set_block(0, j, Matrix::column(unvec(out.maps.basis.col(j), d, k) * e_coords));
  return out;
}

/// F_*(g) for g : N -> N', phi |-> g phi.
inline Matrix coinduce_morphism(const Coinduction& from, const Coinduction& to, const Matrix& g) {
  if (from.module.dim == 0 || to.module.dim == 0) return Matrix(to.module.dim, from.module.dim);
  return to.maps.coords * kron(Matrix::identity(from.ideal_dim), g) * from.maps.basis;
}

/// Unit M -> F_* F^* M of F^* -| F_*: m |-> (x |-> x m).
inline Matrix coinduce_unit(const FDAlgebra&, const Corner& c, const FDModule& m, const Restriction& r,
                            const Coinduction& target) {
  const std::size_t k = c.row_ideal.dim(), d = r.module.dim;
  Matrix out(target.module.dim, m.dim);
  if (target.module.dim == 0) return out;
  for (std::size_t j = 0; j < m.dim; ++j) {
    Matrix phi(d, k);
    for (std::size_t l = 0; l < k; ++l)
      phi.set_block(0, l, Matrix::column(r.projection * m.act(c.row_ideal.basis.col(l)) * Matrix::identity(m.dim).col(j)));
    out.set_block(0, j, Matrix::column(target.maps.coords * vec(phi)));
  }
  return out;
}

/// Counit F^* F_* N -> N of F^* -| F_*: phi |-> phi(e).
inline Matrix coinduce_counit(const Coinduction& co, const Restriction& r) { return co.evaluation * r.inclusion; }

struct Induction {
  FDModule module;    // Ae (x)_B N over A
  Quotient quotient;  // of Ae (x) N, coordinates l * N.dim + p for x_l (x) n_p
  std::size_t source_dim = 0;
  std::size_t ideal_dim = 0;
};

inline Induction induce(const FDAlgebra& a, const Corner& c, const FDModule& n) {
  validate_module(c.algebra, n);
  const std::size_t k = c.col_ideal.dim(), d = n.dim;
  Induction out;
  out.source_dim = d;
  out.ideal_dim = k;
  // relations x b (x) n - x (x) b n
  std::vector<Matrix> rels;
  const Matrix ik = Matrix::identity(k), id = Matrix::identity(d);
  for (std::size_t i = 0; i < c.algebra.dim(); ++i)
    rels.push_back(kron(detail::corner_on_col_ideal(a, c, i), id) - kron(ik, n.action[i]));
  const Matrix sub = rels.empty() || k * d == 0 ? Matrix(k * d, 0) : column_basis(hstack(rels, k * d));
  out.quotient = quotient_by(sub, k * d);
  out.module.dim = out.quotient.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    out.module.action.push_back(out.quotient.projection * kron(detail::algebra_on_col_ideal(a, c, i), id) *
                                out.quotient.section);
  return out;
}

/// F_!(g) = id (x) g.
inline Matrix induce_morphism(const Induction& from, const Induction& to, const Matrix& g) {
  return to.quotient.projection * kron(Matrix::identity(from.ideal_dim), g) * from.quotient.section;
}

/// Unit N -> F^* F_! N of F_! -| F^*: n |-> e (x) n.
inline Matrix induce_unit(const Corner& c, const Induction& ind, const Restriction& r) {
  const Vector e_coords = c.col_ideal.coords * c.idempotent;
  const Matrix embed = kron(Matrix::column(e_coords), Matrix::identity(ind.source_dim));
  return r.projection * ind.quotient.projection * embed;
}

/// Counit F_! F^* M -> M of F_! -| F^*: x (x) m |-> x m.
inline Matrix induce_counit(const Corner& c, const FDModule& m, const Restriction& r, const Induction& ind) {
  const std::size_t k = c.col_ideal.dim(), d = r.module.dim;
  Matrix t(m.dim, k * d);
  for (std::size_t l = 0; l < k; ++l) t.set_block(0, l * d, m.act(c.col_ideal.basis.col(l)) * r.inclusion);
  return t * ind.quotient.section;
}

/// eps_{F^* M} o F^*(eta_M) = id and F_*(eps_N) o eta_{F_* N} = id, on M
/// and on N = F^* M.
inline bool coinduce_triangle_identities(const FDAlgebra& a, const Corner& c, const FDModule& m) {
  const Restriction rm = restrict_module(a, c, m);
  const Coinduction cfm = coinduce(a, c, rm.module);
  const Restriction rcfm = restrict_module(a, c, cfm.module);
  const Matrix eta = coinduce_unit(a, c, m, rm, cfm);
  const Matrix first = coinduce_counit(cfm, rcfm) * restrict_morphism(rm, rcfm, eta);
  if (first != Matrix::identity(rm.module.dim)) return false;

  const FDModule& n = rm.module;
  const Coinduction cn = coinduce(a, c, n);
  const Restriction rcn = restrict_module(a, c, cn.module);
  const Coinduction crcn = coinduce(a, c, rcn.module);
  const Matrix eta_cn = coinduce_unit(a, c, cn.module, rcn, crcn);
  const Matrix eps_n = coinduce_counit(cn, rcn);
  const Matrix second = coinduce_morphism(crcn, cn, eps_n) * eta_cn;
  return second == Matrix::identity(cn.module.dim);
}

/// F^*(eps_M) o eta_{F^* M} = id and eps_{F_! N} o F_!(eta_N) = id.
inline bool induce_triangle_identities(const FDAlgebra& a, const Corner& c, const FDModule& m) {
  const Restriction rm = restrict_module(a, c, m);
  const Induction irm = induce(a, c, rm.module);
  const Restriction rirm = restrict_module(a, c, irm.module);
  const Matrix eta = induce_unit(c, irm, rirm);
  const Matrix eps = induce_counit(c, m, rm, irm);
  if (restrict_morphism(rirm, rm, eps) * eta != Matrix::identity(rm.module.dim)) return false;

  const FDModule& n = rm.module;
  const Induction in = induce(a, c, n);
  const Restriction rin = restrict_module(a, c, in.module);
  const Matrix eta_n = induce_unit(c, in, rin);
  const Induction irin = induce(a, c, rin.module);
  const Matrix eps_in = induce_counit(c, in.module, rin, irin);
  return eps_in * induce_morphism(in, irin, eta_n) == Matrix::identity(in.module.dim);
}

}  // namespace baslab::glue
