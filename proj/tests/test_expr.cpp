#include <gtest/gtest.h>

#include "linefol/error.hpp"
#include "linefol/expr.hpp"

using namespace linefol;

namespace {

constexpr int kRoundTripCases = 500;

std::size_t syntax_position(std::string_view text, const VarSet& vs) {
  try {
    parse_expr(text, vs);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no SyntaxError for '" << text << "'";
  return 0;
}

}  // namespace

class ExprTest : public ::testing::Test {
 protected:
  VarSet v3 = VarSet::coordinates(3);
  VarSet v5 = VarSet::coordinates(5);
};

TEST_F(ExprTest, GordanNoetherPolynomial) {
  RatFunc f = parse_expr("z1^2*z3 + z1*z2*z4 + z2^2*z5", v5);
  ASSERT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.num().size(), 3u);
  EXPECT_TRUE(f.num().is_homogeneous());
  EXPECT_EQ(format_expr(f), "z1^2*z3 + z1*z2*z4 + z2^2*z5");
}

TEST_F(ExprTest, ComplexQuotientNormalized) {
  RatFunc f = parse_expr("(z1 + i*z2)/(1 - z3)", v3);
  EXPECT_TRUE(f.den().leading_coefficient().is_one());
  EXPECT_EQ(f.den(), parse_poly("z3 - 1", v3));
  EXPECT_EQ(f.num(), parse_poly("-z1 - i*z2", v3));
}

TEST_F(ExprTest, ZeroDenominator) {
  try {
    parse_expr("z1/(z2-z2)", v3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  EXPECT_THROW(parse_expr("1/0", v3), Error);
}

TEST_F(ExprTest, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_expr("2/3^2", v3), parse_expr("2/9", v3));
  EXPECT_EQ(parse_expr("1 - 2 - 3", v3), parse_expr("-4", v3));
  EXPECT_EQ(parse_expr("8/4/2", v3), parse_expr("1", v3));
  EXPECT_EQ(parse_expr("-z1^2", v3), parse_expr("-(z1*z1)", v3));
  EXPECT_EQ(parse_expr("z1*-z2", v3), parse_expr("-(z1*z2)", v3));
  EXPECT_EQ(parse_expr("i^2", v3), parse_expr("-1", v3));
  EXPECT_EQ(parse_expr("  z1 +\tz2 ", v3), parse_expr("z2+z1", v3));
  VarSet vts = VarSet::parse("t,s");
  EXPECT_EQ(format_expr(parse_expr("s*t + t", vts)), "t*s + t");
}

TEST_F(ExprTest, SyntaxErrorsCarryPosition) {
  EXPECT_EQ(syntax_position("(z1 + z2", v3), 8u);
  EXPECT_EQ(syntax_position("z1 + z2)", v3), 7u);
  EXPECT_EQ(syntax_position("z1^-2", v3), 3u);
  EXPECT_EQ(syntax_position("z1 2", v3), 3u);
  EXPECT_EQ(syntax_position("2z1", v3), 1u);
  EXPECT_EQ(syntax_position("", v3), 0u);
  EXPECT_EQ(syntax_position("z1 + ", v3), 5u);
  EXPECT_EQ(syntax_position("z1 $ z2", v3), 3u);
  EXPECT_EQ(syntax_position("--z1", v3), 1u);
  EXPECT_EQ(syntax_position("z", v3), 1u);
  EXPECT_EQ(syntax_position("z1^2^3", v3), 4u);
}

TEST_F(ExprTest, UnknownVariable) {
  try {
    parse_expr("z4 + 1", v3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
}

TEST_F(ExprTest, FormatExamples) {
  EXPECT_EQ(format_expr(parse_expr("1", v3)), "1");
  EXPECT_EQ(format_expr(parse_expr("z2/z1", v3)), "z2/z1");
  EXPECT_EQ(format_expr(parse_expr("0", v3)), "0");
  EXPECT_EQ(format_expr(parse_expr("(1/2 + 3*i)*z1 - i*z2 + 2/3", v3)),
            "(1/2 + 3*i)*z1 - i*z2 + 2/3");
  EXPECT_EQ(format_expr(parse_expr("z1/(z2*z3)", v3)), "z1/(z2*z3)");
  EXPECT_EQ(format_expr(parse_expr("(z1+1)/z2^2", v3)), "(z1 + 1)/z2^2");
  EXPECT_EQ(format_expr(parse_expr("-z1/(2*z2 + 2)", v3)), "-1/2*z1/(z2 + 1)");
  EXPECT_EQ(format_scalar(Gq(Rational(-1, 2), Rational(-3))), "-1/2 - 3*i");
  EXPECT_EQ(format_scalar(-Gq::i()), "-i");
}

TEST_F(ExprTest, RoundTripRandomized) {
  Rng rng(31337);
  for (int k = 0; k < kRoundTripCases; ++k) {
    auto poly = [&](bool nonzero) {
      for (;;) {
        std::vector<MultiPoly::Term> terms;
        int n = static_cast<int>(rng.uniform(1, 5));
        for (int j = 0; j < n; ++j) {
          Monomial m;
          int budget = static_cast<int>(rng.uniform(0, 4));
          for (int b = 0; b < budget; ++b) ++m.exp[static_cast<std::size_t>(rng.uniform(0, 2))];
          terms.push_back({m, sample_gaussian_rational(rng, 12)});
        }
        MultiPoly p = MultiPoly::from_terms(v3, std::move(terms));
        if (!nonzero || !p.is_zero()) return p;
      }
    };
    RatFunc f(poly(false), poly(true));
    std::string text = format_expr(f);
    EXPECT_EQ(parse_expr(text, v3), f) << text;
    EXPECT_EQ(format_expr(parse_expr(text, v3)), text);
  }
}
