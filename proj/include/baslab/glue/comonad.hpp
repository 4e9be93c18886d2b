#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/glue/functors.hpp"
#include "baslab/glue/module.hpp"
#include "baslab/matrix.hpp"

namespace baslab::glue {

/// An object of the product category prod_w B_w-mod, one module per
/// idempotent, and a morphism between two such objects.
using BObject = std::vector<FDModule>;
using BMorphism = std::vector<Matrix>;

inline BMorphism compose(const BMorphism& f, const BMorphism& g) {
  if (f.size() != g.size()) throw RankMismatch(f.size(), g.size());
  BMorphism out;
  for (std::size_t w = 0; w < f.size(); ++w) out.push_back(f[w] * g[w]);
  return out;
}

inline BMorphism identity_morphism(const BObject& x) {
  BMorphism out;
  for (const auto& m : x) out.push_back(Matrix::identity(m.dim));
  return out;
}

inline std::size_t total_dim(const BObject& x) {
  std::size_t n = 0;
  for (const auto& m : x) n += m.dim;
  return n;
}

/// Localization data for a family of idempotents e_w of A: the functors
///   pull = (F_w^*)_w : A-mod -> prod B_w-mod
///   push = sum_w F_{w*} : prod B_w-mod -> A-mod
/// with pull -| push, and the comonad Phi = pull o push on the product
/// category, whose (w1, w2) component is F_{w1}^* F_{w2*}.
class Gluing {
 public:
  Gluing(FDAlgebra a, const std::vector<std::string>& idempotent_names) : algebra_(std::move(a)) {
    if (idempotent_names.empty()) throw Error("gluing needs at least one idempotent");
    for (const auto& name : idempotent_names) corners_.push_back(corner_algebra(algebra_, name));
  }

  Gluing(FDAlgebra a, const std::vector<NamedIdempotent>& idempotents) : algebra_(std::move(a)) {
    if (idempotents.empty()) throw Error("gluing needs at least one idempotent");
    for (const auto& e : idempotents) corners_.push_back(corner_algebra(algebra_, e.element, e.name));
  }

  const FDAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t size() const noexcept { return corners_.size(); }
  const Corner& corner(std::size_t w) const { return corners_.at(w); }

  bool faithful() const {
    std::vector<Vector> es;
    for (const auto& c : corners_) es.push_back(c.idempotent);
    return faithfulness_check(algebra_, es);
  }

  BObject pull(const FDModule& m) const {
    BObject out;
    for (const auto& c : corners_) out.push_back(restrict_module(algebra_, c, m).module);
    return out;
  }

  BMorphism pull(const FDModule& from, const FDModule& to, const Matrix& f) const {
    BMorphism out;
    for (const auto& c : corners_)
      out.push_back(restrict_morphism(restrict_module(algebra_, c, from), restrict_module(algebra_, c, to), f));
    return out;
  }

  FDModule push(const BObject& n) const {
    std::vector<FDModule> parts;
    for (std::size_t w = 0; w < size(); ++w) parts.push_back(coinduce(algebra_, corners_[w], n.at(w)).module);
    return direct_sum(parts, algebra_.dim());
  }

  Matrix push(const BObject& from, const BObject& to, const BMorphism& g) const {
    std::vector<Matrix> blocks;
    for (std::size_t w = 0; w < size(); ++w)
      blocks.push_back(coinduce_morphism(coinduce(algebra_, corners_[w], from.at(w)),
                                         coinduce(algebra_, corners_[w], to.at(w)), g.at(w)));
    return block_diagonal(blocks);
  }

  /// Unit M -> push(pull M): the units of the F_w^* -| F_{w*}, stacked.
  Matrix unit(const FDModule& m) const {
    std::vector<Matrix> rows;
    for (const auto& c : corners_) {
      const Restriction r = restrict_module(algebra_, c, m);
      rows.push_back(coinduce_unit(algebra_, c, m, r, coinduce(algebra_, c, r.module)));
    }
    return vstack(rows, m.dim);
  }

  /// Counit pull(push N) -> N: on component w, take the w-th summand of
  /// push N and evaluate at e_w.
  BMorphism counit(const BObject& n) const {
    std::vector<Coinduction> parts;
    for (std::size_t w = 0; w < size(); ++w) parts.push_back(coinduce(algebra_, corners_[w], n.at(w)));
    std::vector<FDModule> mods;
    for (const auto& p : parts) mods.push_back(p.module);
    const FDModule pushed = direct_sum(mods, algebra_.dim());
    BMorphism out;
    std::size_t offset = 0;
    for (std::size_t w = 0; w < size(); ++w) {
      const Restriction r = restrict_module(algebra_, corners_[w], pushed);
      const Matrix summand = r.inclusion.block(offset, 0, parts[w].module.dim, r.module.dim);
      out.push_back(parts[w].evaluation * summand);
      offset += parts[w].module.dim;
    }
    return out;
  }

  BObject phi(const BObject& n) const { return pull(push(n)); }

  BMorphism phi(const BObject& from, const BObject& to, const BMorphism& g) const {
    return pull(push(from), push(to), push(from, to, g));
  }

  /// Comultiplication Phi N -> Phi^2 N: pull applied to the unit at push N.
  BMorphism comultiplication(const BObject& n) const {
    const FDModule p = push(n);
    return pull(p, push(pull(p)), unit(p));
  }

  /// The counit restricted to the diagonal component F_w^* F_{w*} N_w -> N_w.
  Matrix diagonal_counit(const BObject& n, std::size_t w) const {
    const Coinduction co = coinduce(algebra_, corners_[w], n.at(w));
    return coinduce_counit(co, restrict_module(algebra_, corners_[w], co.module));
  }

 private:
  FDAlgebra algebra_;
  std::vector<Corner> corners_;
};

/// The comonad (Phi, counit, comultiplication), materialized on a list of
/// test objects.
struct ComonadSample {
  BObject object;
  BObject phi;
  BObject phi2;
  BMorphism counit;            // Phi N -> N
  BMorphism comultiplication;  // Phi N -> Phi^2 N
};

struct GlueComonad {
  const Gluing* gluing = nullptr;
  std::vector<std::string> names;
  std::vector<ComonadSample> samples;
  bool corrupted = false;  // comultiplication deliberately perturbed
};

/// Adds 1 to the first entry of the first nonempty component; used as a
/// negative control for the axiom checker.
inline BMorphism corrupt(BMorphism f) {
  for (auto& m : f)
    if (m.rows() && m.cols()) {
      m(0, 0) += 1;
      return f;
    }
  return f;
}

inline GlueComonad build_comonad(const Gluing& g, const std::vector<std::pair<std::string, FDModule>>& modules,
                                 bool corrupt_comultiplication = false) {
  GlueComonad c;
  c.gluing = &g;
  c.corrupted = corrupt_comultiplication;
  for (const auto& [name, m] : modules) {
    ComonadSample s;
    s.object = g.pull(m);
    s.phi = g.phi(s.object);
    s.phi2 = g.phi(s.phi);
    s.counit = g.counit(s.object);
    s.comultiplication = g.comultiplication(s.object);
    if (corrupt_comultiplication) s.comultiplication = corrupt(s.comultiplication);
    c.names.push_back(name);
    c.samples.push_back(std::move(s));
  }
  return c;
}

struct AxiomRow {
  std::string module;
  bool coassociative = false;
  bool left_counit = false;   // Phi(eps) o mu = id
  bool right_counit = false;  // eps_Phi o mu = id
  bool counit_iso = false;    // Phi_{w,w} -> Id invertible for every w

  bool pass() const { return coassociative && left_counit && right_counit && counit_iso; }
};

struct AxiomReport {
  std::vector<AxiomRow> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass()) return false;
    return !rows.empty();
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back({{"module", r.module},
                     {"coassociative", r.coassociative},
                     {"left_counit", r.left_counit},
                     {"right_counit", r.right_counit},
                     {"counit_iso", r.counit_iso},
                     {"pass", r.pass()}});
    return {{"rows", arr}, {"pass", pass()}};
  }
};

/// Coassociativity Phi(mu) o mu = mu_Phi o mu and both counit laws, as
/// matrix identities. When the comultiplication was corrupted, the corrupted
/// map is used at every occurrence, with Phi(mu) computed functorially from it.
inline AxiomReport check_comonad_axioms(const GlueComonad& c) {
  const Gluing& g = *c.gluing;
  AxiomReport report;
  for (std::size_t k = 0; k < c.samples.size(); ++k) {
    const ComonadSample& s = c.samples[k];
    AxiomRow row;
    row.module = c.names[k];
    const BMorphism& mu = s.comultiplication;
    BMorphism mu_phi = g.comultiplication(s.phi);
    if (c.corrupted) mu_phi = corrupt(mu_phi);
    const BMorphism phi_mu = g.phi(s.phi, s.phi2, mu);
    row.coassociative = compose(phi_mu, mu) == compose(mu_phi, mu);
    const BMorphism id = identity_morphism(s.phi);
    row.left_counit = compose(g.phi(s.phi, s.object, s.counit), mu) == id;
    row.right_counit = compose(g.counit(s.phi), mu) == id;
    row.counit_iso = true;
    for (std::size_t w = 0; w < g.size(); ++w)
      if (!is_invertible(g.diagonal_counit(s.object, w))) row.counit_iso = false;
    report.rows.push_back(row);
  }
  return report;
}

/// A coalgebra over Phi: an object X with structure map h : X -> Phi X.
struct Coalgebra {
  BObject object;
  BMorphism structure;
};

/// The comparison functor: M |-> (pull M, pull(unit_M)).
inline Coalgebra comparison_functor(const Gluing& g, const FDModule& m) {
  Coalgebra c;
  c.object = g.pull(m);
  c.structure = g.pull(m, g.push(c.object), g.unit(m));
  return c;
}

/// counit o h = id and mu o h = Phi(h) o h.
inline bool check_coalgebra(const Gluing& g, const Coalgebra& c) {
  if (compose(g.counit(c.object), c.structure) != identity_morphism(c.object)) return false;
  const BObject phi = g.phi(c.object);
  return compose(g.comultiplication(c.object), c.structure) == compose(g.phi(c.object, phi, c.structure), c.structure);
}

/// Basis of Hom_B(X, Y) in the product category: each element is nonzero
/// in exactly one component.
inline std::vector<BMorphism> product_hom_basis(const Gluing& g, const BObject& x, const BObject& y) {
  std::vector<BMorphism> out;
  for (std::size_t w = 0; w < g.size(); ++w)
    for (const Matrix& f : hom_basis(g.corner(w).algebra, x[w], y[w])) {
      BMorphism m;
      for (std::size_t v = 0; v < g.size(); ++v) m.push_back(v == w ? f : Matrix(y[v].dim, x[v].dim));
      out.push_back(std::move(m));
    }
  return out;
}

namespace detail {

inline Vector flatten(const BMorphism& f) {
  Vector out;
  for (const auto& m : f) {
    const Vector v = vec(m);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace detail

/// Basis of coalgebra morphisms X -> Y: maps f with k f = Phi(f) h.
inline std::vector<BMorphism> hom_coalgebra(const Gluing& g, const Coalgebra& x, const Coalgebra& y) {
  const auto basis = product_hom_basis(g, x.object, y.object);
  if (basis.empty()) return {};
  std::vector<Vector> cols;
  for (const auto& f : basis) {
    const BMorphism lhs = compose(y.structure, f);
    const BMorphism rhs = compose(g.phi(x.object, y.object, f), x.structure);
    BMorphism diff;
    for (std::size_t w = 0; w < lhs.size(); ++w) diff.push_back(lhs[w] - rhs[w]);
    cols.push_back(detail::flatten(diff));
  }
  const std::size_t rows = cols.front().size();
  const Matrix kernel = rows == 0 ? Matrix::identity(basis.size()) : nullspace(Matrix::from_columns(cols, rows));
  std::vector<BMorphism> out;
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    BMorphism f;
    for (std::size_t w = 0; w < g.size(); ++w) f.push_back(Matrix(y.object[w].dim, x.object[w].dim));
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (sgn(kernel(b, k)) != 0)
        for (std::size_t w = 0; w < g.size(); ++w) f[w] += basis[b][w] * kernel(b, k);
    out.push_back(std::move(f));
  }
  return out;
}

namespace detail {

// Some z with a z = b componentwise, if every component is solvable.
inline std::optional<BMorphism> factor_through(const BMorphism& a, const BMorphism& b) {
  BMorphism out;
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w].cols() == 0) {
      if (!b[w].is_zero()) return std::nullopt;
      out.push_back(Matrix(0, b[w].cols()));
      continue;
    }
    auto z = solve(a[w], b[w]);
    if (!z) return std::nullopt;
    out.push_back(std::move(*z));
  }
  return out;
}

}  // namespace detail

/// For a coalgebra morphism f : X -> Y, computes Ker f and the image
/// Ker(Y -> Coker f) componentwise and checks: Ker f is a subcoalgebra, the
/// image is a subcoalgebra, and the canonical map Coker(Ker f -> X) -> image
/// is a coalgebra isomorphism.
inline bool kernel_cokernel_check(const Gluing& g, const Coalgebra& x, const Coalgebra& y, const BMorphism& f) {
  const std::size_t n = g.size();
  BObject ker, coim, im;
  BMorphism ker_incl, coim_proj, coim_sect, im_incl, im_coords;
  for (std::size_t w = 0; w < n; ++w) {
    const FDAlgebra& b = g.corner(w).algebra;
    const Matrix kernel = nullspace(f[w]);
    Submodule k = submodule(b, x.object[w], kernel);
    ker.push_back(k.module);
    ker_incl.push_back(k.embedding.basis);
    QuotientModule q = quotient_module(b, x.object[w], k.embedding.basis);
    coim.push_back(q.module);
    coim_proj.push_back(q.quotient.projection);
    coim_sect.push_back(q.quotient.section);
    const Matrix image = f[w].cols() ? column_basis(f[w]) : Matrix(y.object[w].dim, 0);
    Submodule i = submodule(b, y.object[w], image);
    im.push_back(i.module);
    im_incl.push_back(i.embedding.basis);
    im_coords.push_back(i.embedding.coords);
  }
  // kernel: h o incl factors through Phi(incl)
  const BMorphism phi_ker_incl = g.phi(ker, x.object, ker_incl);
  if (!detail::factor_through(phi_ker_incl, compose(x.structure, ker_incl))) return false;
  // coimage structure Phi(proj) h sect
  const BMorphism h_coim = compose(g.phi(x.object, coim, coim_proj), compose(x.structure, coim_sect));
  // image structure: k o incl = Phi(incl) o h_im
  auto h_im = detail::factor_through(g.phi(im, y.object, im_incl), compose(y.structure, im_incl));
  if (!h_im) return false;
  // canonical map coim -> im
  const BMorphism canon = compose(im_coords, compose(f, coim_sect));
  for (const auto& m : canon)
    if (!is_invertible(m)) return false;
  return compose(*h_im, canon) == compose(g.phi(coim, im, canon), h_coim);
}

}  // namespace baslab::glue
