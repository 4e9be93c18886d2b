#include <gtest/gtest.h>

#include "baslab/hpoly.hpp"
#include "baslab/selftest.hpp"

using namespace baslab;

namespace {

HPoly h(std::size_t rank, std::size_t i) { return HPoly::variable(rank, i); }
HPoly c(std::size_t rank, long v) { return HPoly::constant(rank, Rational(v)); }

}  // namespace

TEST(HPoly, RingBasics) {
  EXPECT_TRUE(HPoly::linear(HElement{{Rational(0)}}).is_zero());
  EXPECT_EQ(c(1, 1) * h(1, 0), h(1, 0));
  EXPECT_EQ(((h(1, 0) + c(1, 1)) * (h(1, 0) - c(1, 1))).to_string(), "h1^2 - 1");
  EXPECT_EQ((h(2, 0) + h(2, 1)).pow(2).to_string(), "h1^2 + 2*h1*h2 + h2^2");
  EXPECT_EQ(HPoly(2).degree(), -1);
  EXPECT_THROW(h(1, 0) + h(2, 0), RankMismatch);
}

TEST(HPoly, CanonicalTextOrder) {
  const HPoly p = h(2, 0).pow(2) * h(2, 1) - make_rational(3, 2) * h(2, 0) + c(2, 1);
  EXPECT_EQ(p.to_string(), "h1^2*h2 - 3/2*h1 + 1");
  EXPECT_EQ(c(2, 0).to_string(), "0");
}

TEST(HPoly, Evaluate) {
  const RootSystem a2 = RootSystem::parse("A2");
  EXPECT_EQ(h(2, 0).evaluate(a2.rho()), Rational(1));
  EXPECT_EQ((h(2, 0) + h(2, 1)).evaluate(Weight{{Rational(2), Rational(3)}}), Rational(5));
  EXPECT_EQ(c(2, 7).evaluate(Weight{{make_rational(1, 3), Rational(-2)}}), Rational(7));
  EXPECT_THROW(h(2, 0).evaluate(Weight{{Rational(1)}}), RankMismatch);
}

TEST(HPoly, TwistOnA1) {
  const RootSystem a1 = RootSystem::parse("A1");
  const WeylElement s = a1.simple_reflection(0);
  EXPECT_EQ(twist(a1, s, h(1, 0)).to_string(), "-h1 - 2");
  EXPECT_EQ(twist(a1, s, twist(a1, s, h(1, 0))), h(1, 0));
  EXPECT_EQ(twist(a1, a1.identity(), h(1, 0).pow(3) + c(1, 5)), h(1, 0).pow(3) + c(1, 5));
}

TEST(HPoly, TwistOnA2Generators) {
  const RootSystem a2 = RootSystem::parse("A2");
  const WeylElement s1 = a2.simple_reflection(0);
  // s1(a1v) = -a1v, shift -2; s1(a2v) = a1v + a2v, shift +1
  EXPECT_EQ(twist(a2, s1, h(2, 0)).to_string(), "-h1 - 2");
  EXPECT_EQ(twist(a2, s1, h(2, 1)).to_string(), "h1 + h2 + 1");
}

TEST(HPoly, TwistEvaluateMatchesExpandedTwist) {
  selftest::Sampler rng(7);
  for (const std::string t : {"A1", "A2", "B2", "G2", "A3"}) {
    const RootSystem rs = RootSystem::parse(t);
    for (int k = 0; k < 40; ++k) {
      const WeylElement w = rng.weyl(rs);
      const HPoly p = rng.hpoly(rs);
      const Weight x = rng.point(rs);
      ASSERT_EQ(twist_evaluate(rs, w, p, x), twist(rs, w, p).evaluate(x)) << t << " " << w.word_string();
    }
  }
}

TEST(HPoly, DotActionOnLinearGenerators) {
  // evaluate(twist(w, h_i), x) = <a_i^v, w^{-1}(x + rho) - rho>, brute force over B2 and G2
  for (const std::string t : {"B2", "G2"}) {
    const RootSystem rs = RootSystem::parse(t);
    const Weight x{{make_rational(1, 3), Rational(-2)}};
    for (const WeylElement& w : rs.enumerate_weyl())
      for (std::size_t i = 0; i < 2; ++i)
        ASSERT_EQ(twist(rs, w, h(2, i)).evaluate(x), pairing(rs.simple_coroot(i), act_on_weight(inverse(w), x + rs.rho()) - rs.rho()));
  }
}

TEST(HPoly, DivideLinear) {
  const HPoly x = h(1, 0);
  EXPECT_TRUE(divides(x, x * x + x));
  EXPECT_FALSE(divides(x, x + c(1, 1)));
  EXPECT_TRUE(divides(x - c(1, 1), x * (x - c(1, 1))));
  const auto q = divide_linear(x - c(1, 1), x * (x - c(1, 1)));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, x);
  EXPECT_THROW(divides(c(1, 0), x), Error);
  EXPECT_THROW(divides(x * x, x), Error);
}

TEST(HPoly, DivideLinearMultivariate) {
  const HPoly a = h(3, 0) + make_rational(1, 2) * h(3, 2) - c(3, 1);
  const HPoly b = h(3, 1) * h(3, 1) + h(3, 0) * h(3, 2) + c(3, 4);
  const auto q = divide_linear(a, a * b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, b);
  EXPECT_FALSE(divides(a, a * b + h(3, 1)));
  EXPECT_TRUE(divides(a, HPoly(3)));
}
