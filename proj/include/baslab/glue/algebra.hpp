#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/matrix.hpp"
#include "baslab/rational.hpp"

namespace baslab::glue {

struct NamedIdempotent {
  std::string name;
  Vector element;
};

/// Finite-dimensional associative unital algebra over Q, given by the
/// left-multiplication matrices of its basis: column j of left(i) holds the
/// coordinates of b_i b_j.
class FDAlgebra {
 public:
  FDAlgebra() = default;

  FDAlgebra(std::vector<std::string> labels, std::vector<Matrix> left, Vector unit,
            std::vector<NamedIdempotent> idempotents = {}, std::vector<std::size_t> generators = {})
      : labels_(std::move(labels)),
        left_(std::move(left)),
        unit_(std::move(unit)),
        idempotents_(std::move(idempotents)),
        generators_(std::move(generators)) {
    const std::size_t n = labels_.size();
    if (left_.size() != n || unit_.size() != n) throw Error("algebra: basis, structure constants and unit disagree in size");
    for (const auto& m : left_)
      if (m.rows() != n || m.cols() != n) throw Error("algebra: structure matrix has shape " + m.shape());
    if (generators_.empty())
      for (std::size_t i = 0; i < n; ++i) generators_.push_back(i);
    validate();
  }

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Matrix& left(std::size_t i) const { return left_.at(i); }
  const Vector& unit() const noexcept { return unit_; }
  const std::vector<NamedIdempotent>& idempotents() const noexcept { return idempotents_; }
  /// Basis indices whose products span the algebra; used to cut down
  /// linear systems that only need to hold on generators.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  const NamedIdempotent& idempotent(const std::string& name) const {
    for (const auto& e : idempotents_)
      if (e.name == name) return e;
    throw Error("unknown idempotent '" + name + "'");
  }

  Vector basis_vector(std::size_t i) const {
    Vector v(dim());
    v.at(i) = 1;
    return v;
  }

  Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const { return left_[i](k, j); }

  /// x -> a x
  Matrix left_multiplication(const Vector& a) const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (sgn(a[i]) != 0) m += left_[i] * a[i];
    return m;
  }

  /// x -> x b
  Matrix right_multiplication(const Vector& b) const {
    std::vector<Vector> cols;
    cols.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) cols.push_back(left_[i] * b);
    return Matrix::from_columns(cols, dim());
  }

  Vector multiply(const Vector& a, const Vector& b) const { return left_multiplication(a) * b; }

  bool is_idempotent(const Vector& e) const { return multiply(e, e) == e; }

  /// The idempotents sum to 1 and are pairwise orthogonal.
  bool orthogonal_complete() const {
    if (idempotents_.empty()) return false;
    Vector total(dim());
    for (std::size_t a = 0; a < idempotents_.size(); ++a) {
      for (std::size_t i = 0; i < dim(); ++i) total[i] += idempotents_[a].element[i];
      for (std::size_t b = 0; b < idempotents_.size(); ++b)
        if (a != b && !is_zero_vector(multiply(idempotents_[a].element, idempotents_[b].element))) return false;
    }
    return total == unit_;
  }

  /// Jacobson radical, as columns: in characteristic 0 it is the kernel of
  /// the trace form (x, y) -> tr(L_{xy}).
  Matrix radical() const {
    Matrix gram(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) gram(i, j) = (left_[i] * left_[j]).trace();
    return nullspace(gram);
  }

  /// "2*x12 - e1", or "0".
  std::string format(const Vector& v) const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (sgn(v[i]) == 0) continue;
      const Rational mag = abs(v[i]);
      std::string body = mag == 1 ? labels_[i] : to_string(mag) + "*" + labels_[i];
      if (out.empty())
        out = (sgn(v[i]) < 0 ? "-" : "") + body;
      else
        out += (sgn(v[i]) < 0 ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
  }

  /// The same algebra in the basis b'_j = sum_i t(i, j) b_i.
  FDAlgebra change_basis(const Matrix& t, std::vector<std::string> new_labels = {}) const {
    auto inv = inverse(t);
    if (!inv) throw Error("change of basis is not invertible");
    if (new_labels.empty())
      for (std::size_t j = 0; j < dim(); ++j) new_labels.push_back("b" + std::to_string(j + 1));
    std::vector<Matrix> left;
    for (std::size_t j = 0; j < dim(); ++j) left.push_back(*inv * left_multiplication(t.col(j)) * t);
    std::vector<NamedIdempotent> idem;
    for (const auto& e : idempotents_) idem.push_back({e.name, *inv * e.element});
    return FDAlgebra(std::move(new_labels), std::move(left), *inv * unit_, std::move(idem));
  }

  static bool is_zero_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

 private:
  void validate() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (left_[i] * left_[j] != left_multiplication(left_[i].col(j)))
          throw Error("algebra is not associative at (" + labels_[i] + ", " + labels_[j] + ")");
    const Matrix id = Matrix::identity(n);
    if (left_multiplication(unit_) != id || right_multiplication(unit_) != id)
      throw Error("unit does not act as the identity");
    for (const auto& e : idempotents_) {
      if (e.element.size() != n) throw Error("idempotent '" + e.name + "' has the wrong length");
      if (!is_idempotent(e.element)) throw Error("'" + e.name + "' is not idempotent");
    }
  }

  std::vector<std::string> labels_;
  std::vector<Matrix> left_;
  Vector unit_;
  std::vector<NamedIdempotent> idempotents_;
  std::vector<std::size_t> generators_;
};

struct Arrow {
  std::string name;
  std::size_t src;
  std::size_t tgt;
};

/// A linear combination of paths; each path lists arrow names in the order
/// they are traversed.
using Relation = std::vector<std::pair<Rational, std::vector<std::string>>>;

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
};

namespace detail {

struct Path {
  std::size_t src;
  std::size_t tgt;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  auto key() const { return std::make_pair(src, arrows); }
};

// Product a.b in the path algebra: traverse a, then b.
inline std::optional<Path> concat(const Path& a, const Path& b) {
  if (a.tgt != b.src) return std::nullopt;
  Path p{a.src, b.tgt, a.arrows};
  p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
  return p;
}

inline std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_length) {
  std::vector<Path> out;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) out.push_back({v, v, {}});
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].src == out[k].tgt) {
          Path p = out[k];
          p.arrows.push_back(a);
          p.tgt = q.arrows[a].tgt;
          out.push_back(std::move(p));
        }
    begin = end;
  }
  return out;
}

inline Path relation_path(const Quiver& q, const std::vector<std::string>& names) {
  if (names.empty()) throw Error("relation term has an empty path");
  Path p{};
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto it = std::find_if(q.arrows.begin(), q.arrows.end(), [&](const Arrow& a) { return a.name == names[k]; });
    if (it == q.arrows.end()) throw Error("relation uses unknown arrow '" + names[k] + "'");
    const std::size_t a = static_cast<std::size_t>(it - q.arrows.begin());
    if (k == 0)
      p.src = it->src;
    else if (p.tgt != it->src)
      throw Error("relation path is not composable at arrow '" + names[k] + "'");
    p.tgt = it->tgt;
    p.arrows.push_back(a);
  }
  return p;
}

struct TruncatedQuotient {
  std::vector<Path> paths;  // all paths of length <= max_length
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
  Quotient quotient;        // of span(paths) by the truncated relation ideal
  std::vector<std::size_t> basis;  // path indices surviving as the quotient basis
};

// kQ / (I + J^(max_length+1)), realized on paths of length <= max_length.
inline TruncatedQuotient truncated_quotient(const Quiver& q, std::size_t max_length) {
  TruncatedQuotient t;
  std::vector<Path> paths = paths_up_to(q, max_length);
  // longest paths first, so that elimination prefers to keep short paths
  std::stable_sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) { return a.length() > b.length(); });
  for (std::size_t k = 0; k < paths.size(); ++k) t.index.emplace(paths[k].key(), k);
  const std::size_t n = paths.size();

  std::vector<std::pair<Rational, Path>> terms;
  std::vector<Vector> gens;
  for (const Relation& r : q.relations) {
    terms.clear();
    for (const auto& [c, names] : r) terms.emplace_back(c, relation_path(q, names));
    for (const Path& u : paths)
      for (const Path& v : paths) {
        Vector g(n);
        bool any = false;
        for (const auto& [c, p] : terms) {
          auto up = concat(u, p);
          if (!up) continue;
          auto upv = concat(*up, v);
          if (!upv || upv->length() > max_length) continue;
          g[t.index.at(upv->key())] += c;
          any = true;
        }
        if (any && !FDAlgebra::is_zero_vector(g)) gens.push_back(std::move(g));
      }
  }
  t.quotient = quotient_by(gens.empty() ? Matrix(n, 0) : Matrix::from_columns(gens, n), n);
  for (std::size_t j = 0; j < n; ++j) {
    bool free = false;
    for (std::size_t k = 0; k < t.quotient.dim(); ++k)
      if (t.quotient.section(j, k) == 1) free = true;
    if (free) t.basis.push_back(j);
  }
  t.paths = std::move(paths);
  return t;
}

}  // namespace detail

/// The path algebra kQ modulo the two-sided ideal of the relations. Paths
/// compose left to right: the product a*b traverses a, then b, and is zero
/// unless a ends where b starts; the vertex idempotent e_v is the trivial
/// path at v. With `truncate` set to t, the arrow ideal's t-th power is
/// added to the relations. Throws when the quotient is not finite within
/// `max_length`.
inline FDAlgebra path_algebra(const Quiver& q, std::optional<std::size_t> truncate = std::nullopt,
                              std::size_t max_length = 16) {
  if (q.vertices.empty()) throw Error("quiver has no vertices");
  for (const Arrow& a : q.arrows)
    if (a.src >= q.vertices.size() || a.tgt >= q.vertices.size()) throw Error("arrow '" + a.name + "' has an unknown endpoint");

  std::size_t top = 0;  // keep paths of length <= top
  if (truncate) {
    if (*truncate == 0) throw Error("truncation must be at least 1");
    top = *truncate - 1;
  } else {
    // smallest N with every path of length N in I + J^(N+1); then the
    // algebra is kQ / (I + J^N)
    std::size_t n = 1;
    for (;; ++n) {
      if (n > max_length) throw Error("path algebra is not finite-dimensional within path length " + std::to_string(max_length));
      auto t = detail::truncated_quotient(q, n);
      bool all_gone = true;
      for (std::size_t j : t.basis)
        if (t.paths[j].length() == n) all_gone = false;
      if (all_gone) break;
    }
    top = n - 1;
  }

  auto t = detail::truncated_quotient(q, top);
  // order the surviving paths by length, then by enumeration order
  std::vector<std::size_t> order = t.basis;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (t.paths[a].length() != t.paths[b].length()) return t.paths[a].length() < t.paths[b].length();
    if (t.paths[a].src != t.paths[b].src) return t.paths[a].src < t.paths[b].src;
    return t.paths[a].arrows < t.paths[b].arrows;
  });
  const std::size_t d = order.size();
  // coordinates in the quotient basis `order` of an element of span(paths)
  std::vector<std::size_t> qpos(d);  // quotient coordinate of order[k]
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t c = 0; c < t.quotient.dim(); ++c)
      if (t.quotient.section(order[k], c) == 1) qpos[k] = c;
  auto coords = [&](const Vector& full) {
    Vector qc = t.quotient.projection * full;
    Vector out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = qc[qpos[k]];
    return out;
  };

  std::vector<std::string> labels;
  std::vector<std::size_t> generators;
  for (std::size_t k = 0; k < d; ++k) {
    const auto& p = t.paths[order[k]];
    if (p.length() == 0) {
      labels.push_back("e" + q.vertices[p.src]);
    } else {
      std::string s;
      for (std::size_t a : p.arrows) s += (s.empty() ? "" : "*") + q.arrows[a].name;
      labels.push_back(s);
    }
    if (p.length() <= 1) generators.push_back(k);
  }

  const std::size_t n = t.paths.size();
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < d; ++j) {
      Vector full(n);
      if (auto p = detail::concat(t.paths[order[i]], t.paths[order[j]]); p && p->length() <= top)
        full[t.index.at(p->key())] = 1;
      cols.push_back(coords(full));
    }
    left.push_back(Matrix::from_columns(cols, d));
  }

  Vector unit(d);
  std::vector<NamedIdempotent> idem;
  for (std::size_t k = 0; k < d; ++k)
    if (t.paths[order[k]].length() == 0) {
      unit[k] = 1;
      Vector e(d);
      e[k] = 1;
      idem.push_back({labels[k], std::move(e)});
    }
  return FDAlgebra(std::move(labels), std::move(left), std::move(unit), std::move(idem), std::move(generators));
}

/// eAe with unit e, together with its embedding in A and the one-sided
/// ideals eA and Ae that the localization functors are built from.
struct Corner {
  std::string name;
  Vector idempotent;   // e, in coordinates of A
  FDAlgebra algebra;   // eAe
  Embedding embedding; // eAe inside A
  Embedding row_ideal; // eA
  Embedding col_ideal; // Ae
};

inline Corner corner_algebra(const FDAlgebra& a, const Vector& e, std::string name = "e") {
  if (e.size() != a.dim()) throw RankMismatch(a.dim(), e.size());
  if (!a.is_idempotent(e)) throw Error("'" + name + "' is not idempotent");
  const Matrix le = a.left_multiplication(e), re = a.right_multiplication(e);
  Corner c;
  c.name = name;
  c.idempotent = e;
  c.embedding = span_of(le * re);
  c.row_ideal = span_of(le);
  c.col_ideal = span_of(re);

  const Matrix& basis = c.embedding.basis;
  const std::size_t k = basis.cols();
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < k; ++j) {
    const Vector v = basis.col(j);
    std::string label = a.format(v);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (v == a.basis_vector(i)) label = a.label(i);
    labels.push_back(label);
  }
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < k; ++i) left.push_back(c.embedding.coords * a.left_multiplication(basis.col(i)) * basis);
  Vector unit = c.embedding.coords * e;
  std::vector<NamedIdempotent> idem{{name, unit}};
  c.algebra = FDAlgebra(std::move(labels), std::move(left), std::move(unit), std::move(idem));
  return c;
}

inline Corner corner_algebra(const FDAlgebra& a, const std::string& idempotent_name) {
  return corner_algebra(a, a.idempotent(idempotent_name).element, idempotent_name);
}

/// True iff the two-sided ideal generated by the idempotents is all of A.
inline bool faithfulness_check(const FDAlgebra& a, const std::vector<Vector>& idempotents) {
  std::vector<Vector> span;
  for (const Vector& e : idempotents)
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Vector be = a.left(i) * e;  // b_i e
      const Matrix r = a.right_multiplication(be);
      for (std::size_t j = 0; j < a.dim(); ++j) span.push_back(r * a.basis_vector(j));  // b_i e b_j
    }
  if (span.empty()) return a.dim() == 0;
  return rank(Matrix::from_columns(span, a.dim())) == a.dim();
}

}  // namespace baslab::glue
