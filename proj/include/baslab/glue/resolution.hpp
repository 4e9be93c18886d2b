#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/glue/module.hpp"
#include "baslab/matrix.hpp"

namespace baslab::glue {

inline constexpr int kDefaultCutoff = 12;

/// BASLAB_CUTOFF if set to a positive integer, else the default.
inline int cutoff_from_env(int fallback = kDefaultCutoff) {
  const char* v = std::getenv("BASLAB_CUTOFF");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n <= 0) throw Error(std::string("BASLAB_CUTOFF must be a positive integer, got '") + v + "'");
  return static_cast<int>(n);
}

/// The vertex idempotents must be complete, orthogonal and primitive with
/// one-dimensional simple tops; the built-in path algebras are of this kind.
inline void require_basic(const FDAlgebra& a) {
  if (!a.orthogonal_complete()) throw Error("resolutions need a complete set of orthogonal idempotents");
  for (const auto& e : a.idempotents()) {
    const FDModule s = simple_module(a, e.element);
    if (s.dim != 1) throw Error("idempotent '" + e.name + "' does not have a one-dimensional simple top");
  }
}

struct CoverStep {
  FDModule module;                     // Omega^i M
  std::vector<std::size_t> multiplicities;  // of P(e_v) in the cover of Omega^i M
};

struct Resolution {
  enum class Status { finite, periodic, inconclusive };

  std::vector<CoverStep> steps;
  Status status = Status::inconclusive;
  int length = 0;        // projective dimension when finite
  int period_start = 0;  // Omega^start ~ Omega^(start + period) when periodic
  int period = 0;

  std::string status_string() const {
    switch (status) {
      case Status::finite: return "finite";
      case Status::periodic: return "infinite(periodic)";
      case Status::inconclusive: return "inconclusive(cutoff)";
    }
    return "";
  }
};

struct ProjectiveCover {
  FDModule projective;
  Matrix map;  // projective -> M, surjective
  std::vector<std::size_t> multiplicities;
};

/// P = sum_v P(e_v)^{m_v} -> M, with m_v = dim e_v (M / rad M).
inline ProjectiveCover projective_cover(const FDAlgebra& a, const FDModule& m) {
  ProjectiveCover c;
  const QuotientModule t = top(a, m);
  std::vector<FDModule> parts;
  std::vector<Matrix> columns;
  for (const auto& e : a.idempotents()) {
    const Matrix et = t.module.act(e.element);
    const Matrix lifts = et.cols() ? column_basis(et) : Matrix(0, 0);
    c.multiplicities.push_back(lifts.cols());
    if (lifts.cols() == 0) continue;
    const Submodule p = projective_module(a, e.element);
    for (std::size_t j = 0; j < lifts.cols(); ++j) {
      // a lift of the top element into e M
      const Vector x = m.act(e.element) * (t.quotient.section * lifts.col(j));
      Matrix piece(m.dim, p.module.dim);
      for (std::size_t l = 0; l < p.module.dim; ++l)
        piece.set_block(0, l, Matrix::column(m.act(p.embedding.basis.col(l)) * x));
      parts.push_back(p.module);
      columns.push_back(piece);
    }
  }
  c.projective = direct_sum(parts, a.dim());
  c.map = columns.empty() ? Matrix(m.dim, 0) : hstack(columns, m.dim);
  if (rank(c.map) != m.dim) throw InternalError("projective cover is not surjective");
  return c;
}

/// Omega M = ker(P -> M).
inline FDModule syzygy(const FDAlgebra& a, const FDModule& m, std::vector<std::size_t>* multiplicities = nullptr) {
  const ProjectiveCover c = projective_cover(a, m);
  if (multiplicities) *multiplicities = c.multiplicities;
  if (c.projective.dim == 0) return zero_module(a);
  return submodule(a, c.projective, nullspace(c.map)).module;
}

/// Minimal projective resolution by iterated covers, stopping at a zero
/// syzygy, at a syzygy isomorphic to an earlier one, or at the cutoff.
inline Resolution min_projective_resolution(const FDAlgebra& a, const FDModule& m, int cutoff = kDefaultCutoff) {
  require_basic(a);
  validate_module(a, m);
  Resolution r;
  FDModule current = m;
  for (int i = 0; i <= cutoff; ++i) {
    if (current.dim == 0) {
      r.status = Resolution::Status::finite;
      r.length = std::max(0, i - 1);
      return r;
    }
    for (int j = 0; j < i; ++j)
      if (is_isomorphic(a, r.steps[static_cast<std::size_t>(j)].module, current)) {
        r.status = Resolution::Status::periodic;
        r.period_start = j;
        r.period = i - j;
        r.steps.push_back({current, {}});
        return r;
      }
    CoverStep step{current, {}};
    current = syzygy(a, current, &step.multiplicities);
    r.steps.push_back(std::move(step));
  }
  r.status = Resolution::Status::inconclusive;
  return r;
}

struct GlobalDimension {
  enum class Kind { finite, infinite_periodic, inconclusive };
  Kind kind = Kind::inconclusive;
  int value = 0;   // when finite
  int period = 0;  // shortest period seen when periodic

  std::string to_string() const {
    switch (kind) {
      case Kind::finite: return std::to_string(value);
      case Kind::infinite_periodic: return "infinite(periodic)";
      case Kind::inconclusive: return "inconclusive";
    }
    return "";
  }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"global_dimension", to_string()}};
    if (kind == Kind::finite) j["value"] = value;
    if (kind == Kind::infinite_periodic) j["period"] = period;
    return j;
  }
};

/// Maximum projective dimension over the simple modules; a periodic syzygy
/// makes it infinite.
inline GlobalDimension global_dimension(const FDAlgebra& a, int cutoff = kDefaultCutoff) {
  require_basic(a);
  GlobalDimension g;
  g.kind = GlobalDimension::Kind::finite;
  bool inconclusive = false;
  for (const auto& e : a.idempotents()) {
    const Resolution r = min_projective_resolution(a, simple_module(a, e.element), cutoff);
    switch (r.status) {
      case Resolution::Status::finite:
        g.value = std::max(g.value, r.length);
        break;
      case Resolution::Status::periodic:
        if (g.kind != GlobalDimension::Kind::infinite_periodic || r.period < g.period) g.period = r.period;
        g.kind = GlobalDimension::Kind::infinite_periodic;
        break;
      case Resolution::Status::inconclusive:
        inconclusive = true;
        break;
    }
  }
  if (g.kind != GlobalDimension::Kind::infinite_periodic && inconclusive) g.kind = GlobalDimension::Kind::inconclusive;
  return g;
}

}  // namespace baslab::glue
