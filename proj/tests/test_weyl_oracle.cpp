#include <gtest/gtest.h>

#include "baslab/weyl_oracle.hpp"

using namespace baslab;
using namespace baslab::oracle;

TEST(WeylOp, CanonicalCommutationRelations) {
  const WeylOp one = WeylOp::constant(1, Rational(1));
  EXPECT_EQ(commutator(WeylOp::dx(1, 0), WeylOp::x(1, 0)), one);
  EXPECT_EQ(commutator(WeylOp::dy(1, 0), WeylOp::y(1, 0)), one);
  EXPECT_TRUE(commutator(WeylOp::dx(1, 0), WeylOp::y(1, 0)) == WeylOp::constant(1, Rational(0)));
}

TEST(WeylOp, NormalOrdering) {
  // dx x = x dx + 1
  EXPECT_EQ((WeylOp::dx(1, 0) * WeylOp::x(1, 0)).to_string(), "x1*dx1 + 1");
  EXPECT_EQ((WeylOp::dx(1, 0) * WeylOp::dx(1, 0) * WeylOp::x(1, 0).pow(2)).to_string(), "x1^2*dx1^2 + 4*x1*dx1 + 2");
}

TEST(WeylOp, Weights) {
  EXPECT_EQ(WeylOp::euler(2, 1).weight(), (std::vector<int>{0, 0}));
  EXPECT_EQ((WeylOp::x(2, 0) * WeylOp::dy(2, 1)).weight(), (std::vector<int>{1, -1}));
  EXPECT_TRUE(WeylOp::euler(1, 0).is_homogeneous());
}

TEST(Fourier, GeneratorImages) {
  EXPECT_EQ(fourier(WeylOp::x(1, 0), 0), WeylOp::dy(1, 0));
  EXPECT_EQ(fourier(WeylOp::y(1, 0), 0), -WeylOp::dx(1, 0));
  EXPECT_EQ(fourier(WeylOp::dx(1, 0), 0), -WeylOp::y(1, 0));
  EXPECT_EQ(fourier(WeylOp::dy(1, 0), 0), WeylOp::x(1, 0));
}

TEST(Fourier, EulerOperator) {
  // F(E) = -E - 2, the A1 twist of h
  const WeylOp e = WeylOp::euler(1, 0);
  EXPECT_EQ(fourier(e, 0), -e - WeylOp::constant(1, Rational(2)));
}

TEST(Fourier, OtherFactorsUntouched) {
  EXPECT_EQ(fourier(WeylOp::x(2, 1), 0), WeylOp::x(2, 1));
  EXPECT_EQ(fourier(WeylOp::x(2, 1), 1), WeylOp::dy(2, 1));
}

TEST(GradedBasis, Dimensions) {
  EXPECT_EQ(graded_basis({0}).size(), 1u);
  EXPECT_EQ(graded_basis({3}).size(), 4u);
  EXPECT_EQ(graded_basis({2, 1}).size(), 6u);
}

TEST(InvariantElement, A1DegreeOne) {
  // C = x (x) y - y (x) x
  const InvariantTensor t = invariant_element({1});
  EXPECT_EQ(t.solution_dim, 1u);
  ASSERT_EQ(t.left_basis.size(), 2u);
  EXPECT_EQ(t.left_basis[0].value.to_string(), "x1");
  EXPECT_EQ(t.right_basis[1].value.to_string(), "y1");
  EXPECT_EQ(t.coefficients, (Matrix{{0, 1}, {-1, 0}}));
}

TEST(InvariantElement, DualIsMinusW0) {
  EXPECT_EQ(invariant_element({2, 3}).dual, (std::vector<int>{2, 3}));
}

TEST(MOfC, DegreeOne) {
  EXPECT_EQ(m_of_c(std::vector<int>{1}), -WeylOp::euler(1, 0));
}

TEST(MatchEuler, RecognizesScalarMultiples) {
  const HPoly h = HPoly::variable(1, 0);
  const WeylOp e = WeylOp::euler(1, 0);
  const EulerMatch m = match_euler(Rational(3) * e * (e - WeylOp::constant(1, Rational(1))), h * (h - HPoly::constant(1, Rational(1))));
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.scalar, Rational(3));
  EXPECT_FALSE(match_euler(e * e, h * (h - HPoly::constant(1, Rational(1)))).matched);
}

TEST(OracleVerify, FrozenScalars) {
  // m(C_lambda) = (-1)^{|lambda|} prod_j prod_{i=1}^{lambda_j} (E_j + 1 - i)
  for (int n = 0; n <= 5; ++n) {
    const OracleReport r = oracle_verify({n});
    EXPECT_TRUE(r.pass) << n;
    EXPECT_EQ(r.dim_invariant_space, 1u);
    EXPECT_EQ(r.scalar, Rational(n % 2 ? -1 : 1)) << n;
  }
  EXPECT_EQ(oracle_verify({2, 1}).scalar, Rational(-1));
  EXPECT_EQ(oracle_verify({3, 2}).scalar, Rational(-1));
  EXPECT_EQ(oracle_verify({1, 1}).scalar, Rational(1));
}

TEST(OracleVerify, ReportShape) {
  const auto j = oracle_verify({1}).to_json();
  EXPECT_EQ(j["scalar"], "-1");
  EXPECT_EQ(j["formula"], "h1");
  EXPECT_EQ(j["oracle_canonical"], "-x1*dx1 - y1*dy1");
  EXPECT_EQ(j["pass"], true);
}

TEST(OracleVerify, RejectsNegativeDegrees) { EXPECT_THROW(oracle_verify({-1}), Error); }
