#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baslab/error.hpp"
#include "baslab/glue/algebra.hpp"
#include "baslab/glue/module.hpp"
#include "baslab/rational.hpp"

// Quiver file:
//   {"vertices": ["1", "2"],
//    "arrows": [{"name": "x12", "src": "1", "tgt": "2"}, ...],
//    "relations": [[{"coeff": "1", "path": ["x12", "x21"]}], ...],
//    "idempotents": "vertices" | {"name": {"basis label": "coeff", ...}, ...},
//    "truncate": 3}
// Module file:
//   {"dim": 2, "action": {"e1": [[1, 0], [0, 0]], "x12": [...], ...}}
// Entries are integers or "p/q" strings. Actions of composite paths such as
// "x21*x12" may be omitted; they are multiplied out from their factors.

namespace baslab::glue {

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Position of the first occurrence of "token" (quoted), or of the bare
// token, for semantic errors that the DOM no longer locates.
inline ParseError error_at(std::string_view text, const std::string& token, const std::string& what) {
  std::size_t at = text.find("\"" + token + "\"");
  if (at == std::string_view::npos) at = text.find(token);
  if (at == std::string_view::npos) return ParseError(what, 0, 0);
  auto [line, col] = line_column(text, at);
  return ParseError(what, line, col);
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = line_column(text, offset);
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError("malformed JSON (" + msg + ")", line, col);
  }
}

inline Rational json_rational(std::string_view text, const nlohmann::json& v, const std::string& context) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError&) {
      throw error_at(text, v.get<std::string>(), "bad rational '" + v.get<std::string>() + "' in " + context);
    }
  }
  throw error_at(text, context, "expected an integer or a \"p/q\" string in " + context);
}

inline const nlohmann::json& require(std::string_view text, const nlohmann::json& obj, const std::string& key,
                                     const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) throw error_at(text, context, context + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline std::string json_string(std::string_view text, const nlohmann::json& v, const std::string& context) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw error_at(text, context, context + ": expected a string");
}

}  // namespace detail

struct AlgebraSpec {
  Quiver quiver;
  std::optional<std::size_t> truncate;
  // empty: use the vertex idempotents
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>> idempotents;
};

inline AlgebraSpec parse_algebra_spec(std::string_view text) {
  using detail::error_at;
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object", 1, 1);
  AlgebraSpec spec;
  const auto& verts = detail::require(text, j, "vertices", "vertices");
  if (!verts.is_array() || verts.empty()) throw error_at(text, "vertices", "\"vertices\" must be a nonempty array");
  for (const auto& v : verts) spec.quiver.vertices.push_back(detail::json_string(text, v, "vertices"));
  auto vertex = [&](const std::string& name) {
    for (std::size_t k = 0; k < spec.quiver.vertices.size(); ++k)
      if (spec.quiver.vertices[k] == name) return k;
    throw error_at(text, name, "unknown vertex '" + name + "'");
  };
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) throw error_at(text, "arrows", "\"arrows\" must be an array");
    for (const auto& a : j["arrows"]) {
      const std::string name = detail::json_string(text, detail::require(text, a, "name", "arrows"), "arrows");
      const std::size_t src = vertex(detail::json_string(text, detail::require(text, a, "src", name), name));
      const std::size_t tgt = vertex(detail::json_string(text, detail::require(text, a, "tgt", name), name));
      spec.quiver.arrows.push_back({name, src, tgt});
    }
  }
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) throw error_at(text, "relations", "\"relations\" must be an array");
    for (const auto& r : j["relations"]) {
      if (!r.is_array()) throw error_at(text, "relations", "each relation must be an array of terms");
      Relation rel;
      for (const auto& t : r) {
        const Rational c = detail::json_rational(text, detail::require(text, t, "coeff", "relations"), "coeff");
        const auto& path = detail::require(text, t, "path", "relations");
        if (!path.is_array()) throw error_at(text, "path", "\"path\" must be an array of arrow names");
        std::vector<std::string> names;
        for (const auto& p : path) {
          names.push_back(detail::json_string(text, p, "path"));
          bool known = false;
          for (const auto& a : spec.quiver.arrows) known = known || a.name == names.back();
          if (!known) throw error_at(text, names.back(), "relation uses unknown arrow '" + names.back() + "'");
        }
        rel.emplace_back(c, std::move(names));
      }
      spec.quiver.relations.push_back(std::move(rel));
    }
  }
  if (j.contains("truncate")) {
    if (!j["truncate"].is_number_integer() || j["truncate"].get<long>() < 1)
      throw error_at(text, "truncate", "\"truncate\" must be a positive integer");
    spec.truncate = static_cast<std::size_t>(j["truncate"].get<long>());
  }
  if (j.contains("idempotents")) {
    const auto& id = j["idempotents"];
    if (id.is_string()) {
      if (id.get<std::string>() != "vertices") throw error_at(text, "idempotents", "\"idempotents\" must be \"vertices\" or an object");
    } else if (id.is_object()) {
      for (const auto& [name, combo] : id.items()) {
        if (!combo.is_object()) throw error_at(text, name, "idempotent '" + name + "' must map basis labels to coefficients");
        std::vector<std::pair<std::string, Rational>> terms;
        for (const auto& [label, c] : combo.items()) terms.emplace_back(label, detail::json_rational(text, c, label));
        spec.idempotents.emplace_back(name, std::move(terms));
      }
    } else {
      throw error_at(text, "idempotents", "\"idempotents\" must be \"vertices\" or an object");
    }
  }
  return spec;
}

/// Builds the algebra; explicit idempotents replace the vertex ones.
inline FDAlgebra build_algebra(const AlgebraSpec& spec) {
  FDAlgebra a = path_algebra(spec.quiver, spec.truncate);
  if (spec.idempotents.empty()) return a;
  std::vector<NamedIdempotent> idem;
  for (const auto& [name, terms] : spec.idempotents) {
    Vector e(a.dim());
    for (const auto& [label, c] : terms) {
      auto k = a.index_of(label);
      if (!k) throw Error("idempotent '" + name + "' uses unknown basis label '" + label + "'");
      e[*k] += c;
    }
    idem.push_back({name, std::move(e)});
  }
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < a.dim(); ++i) left.push_back(a.left(i));
  return FDAlgebra(a.labels(), std::move(left), a.unit(), std::move(idem), a.generators());
}

inline FDAlgebra parse_algebra(std::string_view text) { return build_algebra(parse_algebra_spec(text)); }

inline FDModule parse_module(std::string_view text, const FDAlgebra& a) {
  using detail::error_at;
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("module file must be a JSON object", 1, 1);
  const auto& dj = detail::require(text, j, "dim", "module");
  if (!dj.is_number_integer() || dj.get<long>() < 0) throw error_at(text, "dim", "\"dim\" must be a non-negative integer");
  const auto d = static_cast<std::size_t>(dj.get<long>());
  const auto& act = detail::require(text, j, "action", "module");
  if (!act.is_object()) throw error_at(text, "action", "\"action\" must be an object");

  std::vector<std::optional<Matrix>> given(a.dim());
  for (const auto& [label, rows] : act.items()) {
    auto k = a.index_of(label);
    if (!k) throw error_at(text, label, "unknown basis label '" + label + "'");
    if (!rows.is_array() || rows.size() != d) throw error_at(text, label, "action of '" + label + "' must have " + std::to_string(d) + " rows");
    Matrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      if (!rows[r].is_array() || rows[r].size() != d)
        throw error_at(text, label, "row " + std::to_string(r + 1) + " of '" + label + "' must have " + std::to_string(d) + " entries");
      for (std::size_t c = 0; c < d; ++c) m(r, c) = detail::json_rational(text, rows[r][c], label);
    }
    given[*k] = std::move(m);
  }
  FDModule out{d, {}};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (given[i]) {
      out.action.push_back(*given[i]);
      continue;
    }
    // composite label: product of the factors' actions
    const std::string& label = a.label(i);
    if (label.find('*') == std::string::npos) throw ParseError("module does not give the action of '" + label + "'", 0, 0);
    Matrix m = Matrix::identity(d);
    std::stringstream ss(label);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      auto k = a.index_of(factor);
      if (!k || !given[*k]) throw ParseError("module does not give the action of '" + factor + "'", 0, 0);
      m = m * *given[*k];
    }
    out.action.push_back(std::move(m));
  }
  validate_module(a, out);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json module_json(const FDAlgebra& a, const FDModule& m) {
  nlohmann::json act = nlohmann::json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < m.dim; ++c) row.push_back(to_string(m.action[i](r, c)));
      rows.push_back(row);
    }
    act[a.label(i)] = rows;
  }
  return {{"dim", m.dim}, {"action", act}};
}

}  // namespace baslab::glue
