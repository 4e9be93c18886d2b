#include <gtest/gtest.h>

#include "baslab/plambda.hpp"
#include "baslab/selftest.hpp"

using namespace baslab;

namespace {

Weight w(std::initializer_list<long> c) {
  Weight out;
  for (long x : c) out.coords.emplace_back(x);
  return out;
}

}  // namespace

TEST(PLambda, A1Closed) {
  const RootSystem a1 = RootSystem::parse("A1");
  EXPECT_EQ(build_p_lambda(a1, w({0})).expanded.to_string(), "1");
  EXPECT_EQ(build_p_lambda(a1, w({2})).expanded.to_string(), "h1^2 - h1");
  EXPECT_EQ(build_p_lambda(a1, w({3})).expanded.to_string(), "h1^3 - 3*h1^2 + 2*h1");
}

TEST(PLambda, A2FundamentalWeight) {
  // forms with <a, omega1> = 1: a1v (shift 0) and a1v + a2v (shift 1)
  const PLambda p = build_p_lambda(RootSystem::parse("A2"), w({1, 0}));
  ASSERT_EQ(p.factors.size(), 2u);
  EXPECT_EQ(p.factors[0].poly().to_string(), "h1");
  EXPECT_EQ(p.factors[1].poly().to_string(), "h1 + h2 + 1");
  EXPECT_EQ(p.expanded.to_string(), "h1^2 + h1*h2 + h1");
}

TEST(PLambda, ExpansionEqualsProductOfFactors) {
  for (const auto& [t, lambda] : std::vector<std::pair<std::string, Weight>>{
           {"B2", w({1, 1})}, {"G2", w({1, 2})}, {"A3", w({2, 0, 1})}, {"C3", w({1, 0, 1})}}) {
    const PLambda p = build_p_lambda(RootSystem::parse(t), lambda);
    HPoly prod = HPoly::constant(p.rs.rank(), Rational(1));
    for (const auto& f : p.factors) prod = prod * f.poly();
    EXPECT_EQ(p.expanded, prod) << t;
  }
}

TEST(PLambda, B2RhoFactors) {
  // coroots (1,0), (0,1), (1,1), (2,1) of heights 1, 1, 2, 3
  const PLambda p = build_p_lambda(RootSystem::parse("B2"), w({1, 1}));
  std::vector<std::string> forms;
  for (const auto& f : p.factors) forms.push_back(f.poly().to_string());
  EXPECT_EQ(forms, (std::vector<std::string>{"h1", "h2", "h1 + h2 + 1", "h1 + h2", "2*h1 + h2 + 2", "2*h1 + h2 + 1", "2*h1 + h2"}));
  EXPECT_EQ(p.expanded.degree(), 7);
}

TEST(PLambda, DegreeAndDivisibility) {
  for (const auto& t : {"A1", "A2", "B2", "G2", "A1xA1"}) {
    const RootSystem rs = RootSystem::parse(t);
    const PLambda p = build_p_lambda(rs, Rational(2) * rs.rho());
    EXPECT_TRUE(degree_check(p)) << t;
    EXPECT_TRUE(divisibility_check(p)) << t;
  }
  // vacuous at lambda = 0
  const PLambda zero = build_p_lambda(RootSystem::parse("A2"), w({0, 0}));
  EXPECT_TRUE(degree_check(zero));
  EXPECT_TRUE(divisibility_check(zero));
}

TEST(PLambda, OnlyPositivelyPairedFormsDivide) {
  // A2, lambda = omega1: a2v has pairing 0, so (h2 + 1 - 0 - 1) = h2 must not divide
  const PLambda p = build_p_lambda(RootSystem::parse("A2"), w({1, 0}));
  EXPECT_TRUE(divides(HPoly::linear(HElement{{Rational(1), Rational(0)}}), p.expanded));
  EXPECT_TRUE(divides(HPoly::linear(HElement{{Rational(1), Rational(1)}}, Rational(1)), p.expanded));
  EXPECT_FALSE(divides(HPoly::linear(HElement{{Rational(0), Rational(1)}}), p.expanded));
}

TEST(PLambda, RejectsBadWeights) {
  const RootSystem a2 = RootSystem::parse("A2");
  EXPECT_THROW(build_p_lambda(a2, w({1, -1})), Error);
  EXPECT_THROW(build_p_lambda(a2, Weight{{make_rational(1, 2), Rational(0)}}), Error);
  EXPECT_THROW(build_p_lambda(a2, w({1})), RankMismatch);
}

TEST(PLambda, FactorizationOverProducts) {
  const HPoly p1 = build_p_lambda(RootSystem::parse("A1"), w({2})).expanded;
  const HPoly p2 = build_p_lambda(RootSystem::parse("B2"), w({1, 1})).expanded;
  const HPoly p = build_p_lambda(RootSystem::parse("A1xB2"), w({2, 1, 1})).expanded;
  EXPECT_EQ(p, p1.embed(3, 0) * p2.embed(3, 1));
}

TEST(Witness, A1AtOrigin) {
  const Witness r = find_witness(RootSystem::parse("A1"), w({1}), w({0}));
  EXPECT_EQ(r.w.word_string(), "s1");
  EXPECT_EQ(r.value, Rational(-2));
}

TEST(Witness, A1DoubleWeightAtOmega) {
  // P = h(h - 1) vanishes at 1; twist(s, P)(1) = (-3)(-4)
  const Witness r = find_witness(RootSystem::parse("A1"), w({2}), w({1}));
  EXPECT_EQ(r.w.word_string(), "s1");
  EXPECT_EQ(r.value, Rational(12));
}

TEST(Witness, IdentityWhenShiftedPointIsAntidominant) {
  const RootSystem b2 = RootSystem::parse("B2");
  const Witness r = find_witness(b2, b2.rho(), Weight{{make_rational(-5, 2), Rational(-3)}});
  EXPECT_TRUE(r.w.is_identity());
  EXPECT_EQ(r.strategy, "chamber(x+rho)");
}

TEST(Witness, CertifiedOnWallsAndIntegerPairings) {
  selftest::Sampler rng(11);
  for (const std::string t : {"A2", "B2", "G2", "A3"}) {
    const RootSystem rs = RootSystem::parse(t);
    const PLambda p = build_p_lambda(rs, rs.rho());
    for (int k = 0; k < 50; ++k) {
      const Weight x = rng.point(rs);
      const Witness r = find_witness(p, x);
      ASSERT_NE(sgn(r.value), 0);
      ASSERT_EQ(twist(rs, r.w, p.expanded).evaluate(x), r.value) << t;
    }
  }
}

TEST(Witness, JsonShape) {
  const Witness r = find_witness(RootSystem::parse("A1"), w({1}), w({0}));
  const auto j = witness_json(r);
  EXPECT_EQ(j["word"], "s1");
  EXPECT_EQ(j["value_at_x"], "-2");
  EXPECT_EQ(j["matrix"], nlohmann::json::parse("[[-1]]"));
}
