#include <gtest/gtest.h>

#include <sstream>

#include "baslab/cli.hpp"

using namespace baslab;
using namespace baslab::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "baslab");
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, PLambdaA1) {
  const Outcome r = invoke({"plambda", "--type", "A1", "--weight", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "h1^2 - h1");
  EXPECT_NE(r.out.find("factors (h1) (h1 - 1)"), std::string::npos);
}

TEST(Cli, PLambdaJson) {
  const Outcome r = invoke({"plambda", "--type", "A2", "--weight", "1,0", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["expanded"], "h1^2 + h1*h2 + h1");
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["lambda"], nlohmann::json::parse(R"(["1", "0"])"));
  EXPECT_EQ(j["factors"].size(), 2u);
}

TEST(Cli, WitnessA1) {
  const Outcome r = invoke({"witness", "--type", "A1", "--weight", "1", "--point", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["witness"]["word"], "s1");
  EXPECT_EQ(j["witness"]["value_at_x"], "-2");
}

TEST(Cli, OracleReport) {
  const Outcome r = invoke({"oracle", "--factors", "2,1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["scalar"], "-1");
  EXPECT_EQ(j["dim_invariant_space"], 1);
}

TEST(Cli, GlueHomdim) {
  EXPECT_EQ(invoke({"glue-homdim", "--example", "tildeA"}).out, "gldim(tildeA) = 2\n");
  EXPECT_EQ(invoke({"glue", "homdim", "--example", "hatA"}).out, "gldim(hatA) = infinite(periodic), period 2\n");
}

TEST(Cli, GlueAxiomsNegativeControl) {
  EXPECT_EQ(invoke({"glue", "axioms", "--example", "hatA"}).code, 0);
  EXPECT_EQ(invoke({"glue", "axioms", "--example", "hatA", "--corrupt"}).code, 1);
}

TEST(Cli, GlueDemo) {
  const Outcome r = invoke({"glue", "demo", "--example", "tildeA", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dim"], 5);
  EXPECT_EQ(j["corners"][1]["dim"], 2);
  EXPECT_EQ(j["global_dimension"]["global_dimension"], "2");
  EXPECT_EQ(j["checks"]["pass"], true);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"plambda", "--type", "A1"}).code, 2);
  EXPECT_EQ(invoke({"plambda", "--type", "A2", "--weight", "1,-1"}).code, 2);
  EXPECT_EQ(invoke({"plambda", "--type", "A2", "--weight", "1"}).code, 2);
  EXPECT_EQ(invoke({"plambda", "--type", "Z9", "--weight", "1"}).code, 2);
  EXPECT_EQ(invoke({"selftest", "--suites", ""}).code, 2);
  EXPECT_EQ(invoke({"selftest", "--suites", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"glue-homdim"}).code, 2);
  EXPECT_EQ(invoke({"glue-homdim", "--example", "tildeA", "--algebra", "x.json"}).code, 2);
  EXPECT_EQ(invoke({"plambda", "--type", "A1", "--weight", "1", "--format", "xml"}).code, 2);
}

TEST(Cli, RankMismatchSurfacesVerbatim) {
  const Outcome r = invoke({"witness", "--type", "A2", "--weight", "1,1", "--point", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("rank mismatch: expected 2, got 1"), std::string::npos);
}

TEST(Cli, ParseErrorCarriesColumn) {
  const Outcome r = invoke({"witness", "--type", "A1", "--weight", "1", "--point", "1/x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("column"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(RunConfig, CanonicalRoundTrip) {
  const std::vector<std::vector<std::string>> lines{
      {"baslab", "plambda", "--type", "A1xB2", "--weight", "1,2/2,0"},
      {"baslab", "witness", "--type", "G2", "--weight", "1,1", "--point", "-1/3,4", "--format", "json"},
      {"baslab", "oracle", "--factors", "3,2"},
      {"baslab", "glue", "axioms", "--example", "hatA", "--corrupt", "--cutoff", "7"},
      {"baslab", "selftest", "--seed", "99", "--suites", "oracle,gluing"}};
  for (const auto& l : lines) {
    const RunConfig c = parse_args(l);
    const RunConfig back = RunConfig::from_string(c.to_string());
    EXPECT_EQ(back, c) << c.to_string();
    EXPECT_EQ(back.to_string(), c.to_string());
  }
  EXPECT_EQ(parse_args(lines[0]).weight[1], Rational(1));
  EXPECT_EQ(parse_args(lines[3]).command, "glue-axioms");
  EXPECT_THROW(RunConfig::from_string(R"({"command": "fly"})"), ParseError);
}

TEST(RunConfig, CutoffPrecedence) {
  ::setenv("BASLAB_CUTOFF", "7", 1);
  EXPECT_EQ(parse_args({"baslab", "glue-homdim", "--example", "k"}).cutoff, 7);
  EXPECT_EQ(parse_args({"baslab", "glue-homdim", "--example", "k", "--cutoff", "3"}).cutoff, 3);
  ::unsetenv("BASLAB_CUTOFF");
  EXPECT_EQ(parse_args({"baslab", "glue-homdim", "--example", "k"}).cutoff, glue::kDefaultCutoff);
}

TEST(RunConfig, CanonicalFormHasSortedKeys) {
  const std::string s = parse_args({"baslab", "roots", "--type", "A2"}).to_string();
  EXPECT_EQ(s.rfind("{\"algebra\"", 0), 0u);
  EXPECT_LT(s.find("\"command\""), s.find("\"type\""));
}

TEST(Selftest, DeterministicJson) {
  const std::vector<std::string> args{"selftest", "--seed", "5", "--suites", "twisted-action,weyl-group", "--format", "json"};
  const Outcome a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, invoke({"selftest", "--seed", "6", "--suites", "twisted-action,weyl-group", "--format", "json"}).out);
}

TEST(Selftest, CorruptedGluingFails) {
  const Outcome r = invoke({"selftest", "--suites", "gluing", "--corrupt"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL  gluing"), std::string::npos);
}
