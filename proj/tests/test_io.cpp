#include <gtest/gtest.h>

#include "baslab/gluelab.hpp"

using namespace baslab;
using namespace baslab::glue;

namespace {

const char* kHatA = R"({
  "vertices": ["1", "2"],
  "arrows": [{"name": "x12", "src": "1", "tgt": "2"}, {"name": "x21", "src": "2", "tgt": "1"}],
  "relations": [[{"coeff": 1, "path": ["x12", "x21"]}], [{"coeff": "1", "path": ["x21", "x12"]}]]
})";

ParseError parse_error_of(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ParseError& e) {
    return e;
  }
  throw std::runtime_error("no parse error for: " + text);
}

}  // namespace

TEST(AlgebraFile, MatchesBuiltin) {
  const FDAlgebra a = parse_algebra(kHatA);
  EXPECT_EQ(a.dim(), 4u);
  EXPECT_EQ(a.labels(), hat_a().labels());
  EXPECT_EQ(global_dimension(a).kind, GlobalDimension::Kind::infinite_periodic);
}

TEST(AlgebraFile, Truncation) {
  const FDAlgebra a = parse_algebra(R"({"vertices": ["1", "2"],
    "arrows": [{"name": "x12", "src": "1", "tgt": "2"}, {"name": "x21", "src": "2", "tgt": "1"}],
    "truncate": 3})");
  EXPECT_EQ(a.dim(), 6u);
}

TEST(AlgebraFile, ExplicitIdempotents) {
  const FDAlgebra a = parse_algebra(R"({"vertices": ["1", "2"],
    "arrows": [{"name": "x12", "src": "1", "tgt": "2"}, {"name": "x21", "src": "2", "tgt": "1"}],
    "relations": [[{"coeff": 1, "path": ["x12", "x21"]}]],
    "idempotents": {"f": {"e1": 1, "x12": "1/2"}, "g": {"e2": 1, "x12": "-1/2"}}})");
  EXPECT_EQ(a.idempotents().size(), 2u);
  EXPECT_TRUE(a.orthogonal_complete());
  EXPECT_EQ(global_dimension(a).to_string(), "2");
}

TEST(AlgebraFile, MalformedJsonReportsLineAndColumn) {
  const ParseError e = parse_error_of("{\n  \"vertices\": [\"1\",\n  ]\n}");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_GT(e.column(), 0u);
}

TEST(AlgebraFile, UnknownArrowIsLocated) {
  const ParseError e = parse_error_of(R"({"vertices": ["1"],
"arrows": [{"name": "a", "src": "1", "tgt": "1"}],
"relations": [[{"coeff": 1, "path": ["a", "zz"]}]]})");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 43u);  // the opening quote of "zz"
  EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
}

TEST(AlgebraFile, UnknownVertexAndBadCoefficient) {
  EXPECT_THROW(parse_algebra(R"({"vertices": ["1"], "arrows": [{"name": "a", "src": "1", "tgt": "9"}]})"), ParseError);
  EXPECT_THROW(parse_algebra(R"({"vertices": ["1"], "arrows": [{"name": "a", "src": "1", "tgt": "1"}],
    "relations": [[{"coeff": "1/0", "path": ["a"]}]]})"), ParseError);
  EXPECT_THROW(parse_algebra(R"({"arrows": []})"), ParseError);
  EXPECT_THROW(parse_algebra("[1, 2]"), ParseError);
}

TEST(ModuleFile, ComposesMissingPathActions) {
  const FDAlgebra a = tilde_a();
  const FDModule m = parse_module(R"({"dim": 3, "action": {
    "e1":  [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
    "e2":  [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
    "x12": [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
    "x21": [[0, 0, 0], [0, 0, 0], [0, 1, 0]]}})", a);
  EXPECT_EQ(m.dim, 3u);
  EXPECT_TRUE(is_isomorphic(a, m, projective_module(a, a.idempotent("e2").element).module));
}

TEST(ModuleFile, RoundTrip) {
  const FDAlgebra a = hat_a();
  const FDModule p = projective_module(a, a.idempotent("e1").element).module;
  const FDModule q = parse_module(module_json(a, p).dump(), a);
  EXPECT_EQ(q.dim, p.dim);
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(q.action[i], p.action[i]);
}

TEST(ModuleFile, Errors) {
  const FDAlgebra a = hat_a();
  EXPECT_THROW(parse_module(R"({"dim": 1, "action": {"e1": [[1]], "e2": [[0]], "x12": [[0]]}})", a), ParseError);
  EXPECT_THROW(parse_module(R"({"dim": 1, "action": {"q": [[1]]}})", a), ParseError);
  EXPECT_THROW(parse_module(R"({"dim": 2, "action": {"e1": [[1]]}})", a), ParseError);
  // not a module: e1 and e2 both act as the identity
  EXPECT_THROW(parse_module(R"({"dim": 1, "action": {"e1": [[1]], "e2": [[1]], "x12": [[0]], "x21": [[0]]}})", a), Error);
}

TEST(ModuleFile, SampleDataLoads) {
  const std::string dir = BASLAB_DATA_DIR;
  const FDAlgebra a = parse_algebra(read_file(dir + "/hatA.json"));
  for (const char* f : {"hatA_S1.json", "hatA_S2.json", "hatA_P1.json", "hatA_P2.json"})
    EXPECT_NO_THROW(parse_module(read_file(dir + "/" + f), a)) << f;
  EXPECT_EQ(parse_algebra(read_file(dir + "/tildeA.json")).dim(), 5u);
  EXPECT_EQ(parse_algebra(read_file(dir + "/free_truncated.json")).dim(), 6u);
  EXPECT_THROW(read_file(dir + "/missing.json"), Error);
}
