#include <gtest/gtest.h>

#include "baslab/matrix.hpp"
#include "baslab/rational.hpp"

using namespace baslab;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-4/6"), make_rational(-2, 3));
  EXPECT_EQ(to_string(parse_rational("6/3")), "2");
  EXPECT_EQ(to_string(parse_rational("-4/6")), "-2/3");
}

TEST(Rational, RejectsMalformedTextWithColumn) {
  try {
    parse_rational_list("1,2/0");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_rational("1/"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational_list("1,,2"), ParseError);
}

TEST(Rational, JoinsCanonically) {
  EXPECT_EQ(join({Rational(1), make_rational(1, 2), Rational(-3)}), "1,1/2,-3");
  EXPECT_EQ(join(std::vector<std::string>{"e1", "x12"}), "e1, x12");
}

TEST(Matrix, RankNullspaceAndSolve) {
  const Matrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(a), 2u);
  const Matrix n = nullspace(a);
  ASSERT_EQ(n.cols(), 1u);
  EXPECT_TRUE((a * n).is_zero());
  const Matrix b{{6}, {12}, {2}};
  auto x = solve(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * *x, b);
  EXPECT_FALSE(solve(a, Matrix{{1}, {0}, {0}}).has_value());
}

TEST(Matrix, InverseOfInvertibleAndSingular) {
  const Matrix a{{2, 1}, {1, 1}};
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, Matrix::identity(2));
  EXPECT_FALSE(inverse(Matrix{{1, 2}, {2, 4}}).has_value());
}

TEST(Matrix, KroneckerMatchesVecIdentity) {
  // vec(A X B) = (B^T kron A) vec(X)
  const Matrix a{{1, 2}, {0, 1}}, x{{1, -1}, {3, 2}}, b{{0, 1}, {1, 1}};
  EXPECT_EQ(vec(a * x * b), kron(b.transpose(), a) * vec(x));
  EXPECT_EQ(unvec(vec(x), 2, 2), x);
}

TEST(Matrix, SpanAndQuotientAreSplit) {
  const Matrix s{{1, 1}, {1, 1}, {0, 2}};
  const Embedding e = span_of(s);
  EXPECT_EQ(e.dim(), 2u);
  EXPECT_EQ(e.coords * e.basis, Matrix::identity(2));
  const Quotient q = quotient_by(e.basis, 3);
  EXPECT_EQ(q.dim(), 1u);
  EXPECT_EQ(q.projection * q.section, Matrix::identity(1));
  EXPECT_TRUE((q.projection * e.basis).is_zero());
}

TEST(Matrix, BlocksAndStacks) {
  const Matrix a{{1}}, b{{2, 3}};
  const Matrix d = block_diagonal({a, b});
  EXPECT_EQ(d, (Matrix{{1, 0, 0}, {0, 2, 3}}));
  EXPECT_EQ(hstack({Matrix{{1}, {2}}, Matrix{{3}, {4}}}, 2), (Matrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(vstack({b, b}, 2), (Matrix{{2, 3}, {2, 3}}));
}
