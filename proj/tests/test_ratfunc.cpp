#include <gtest/gtest.h>

#include "linefol/error.hpp"
#include "linefol/expr.hpp"
#include "linefol/ratfunc.hpp"

using namespace linefol;

namespace {

class Rat : public ::testing::Test {
 protected:
  VarSet v3 = VarSet::coordinates(3);
  VarSet vt = VarSet::parse("z1,z2,z3,t");
  RatFunc e(std::string_view s, const VarSet& vs) { return parse_expr(s, vs); }
  RatFunc e(std::string_view s) { return parse_expr(s, v3); }

  RatFunc random_ratfunc(Rng& rng, const VarSet& vs, int deg) {
    auto poly = [&](bool nonzero) {
      for (;;) {
        std::vector<MultiPoly::Term> terms;
        int n = static_cast<int>(rng.uniform(1, 4));
        for (int k = 0; k < n; ++k) {
          Monomial m;
          int budget = static_cast<int>(rng.uniform(0, deg));
          for (int j = 0; j < budget; ++j) ++m.exp[static_cast<std::size_t>(rng.uniform(0, int(vs.size()) - 1))];
          terms.push_back({m, sample_nonzero_gaussian(rng, 7)});
        }
        MultiPoly p = MultiPoly::from_terms(vs, std::move(terms));
        if (!nonzero || !p.is_zero()) return p;
      }
    };
    return RatFunc(poly(false), poly(true));
  }
};

}  // namespace

TEST_F(Rat, NormalizationInvariant) {
  RatFunc f(e("z1^2 - z2^2").num(), e("2*z1 + 2*z2").num());
  EXPECT_EQ(f, e("z1/2 - z2/2"));
  RatFunc g(e("z1").num(), e("3*z2 + 6").num());
  EXPECT_TRUE(g.den().leading_coefficient().is_one());
  EXPECT_EQ(g.num(), e("z1/3").num());
  try {
    RatFunc bad(e("z1").num(), MultiPoly(v3));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ZeroDenominator);
  }
}

TEST_F(Rat, DerivativeQuotientRule) {
  EXPECT_EQ(derivative(e("1/z1"), "z1"), e("-1/z1^2"));
  EXPECT_EQ(derivative(e("z1/(z1 + z2)"), "z1"), e("z2/(z1 + z2)^2"));
  EXPECT_EQ(derivative(e("z1/z2^3"), "z2"), e("-3*z1/z2^4"));
  EXPECT_TRUE(derivative(e("7/3"), "z1").is_zero());
  EXPECT_THROW(derivative(e("z1"), "w"), Error);
}

TEST_F(Rat, EvaluateAndPole) {
  std::vector<Gq> pt{Gq(2), Gq(3), Gq(1)};
  EXPECT_EQ(evaluate(e("z1*z2"), pt), Gq(6));
  EXPECT_EQ(evaluate(e("z1/z2"), pt), Gq(Rational(2, 3)));
  std::vector<Gq> origin{Gq(0), Gq(1), Gq(1)};
  try {
    evaluate(e("1/z1"), origin);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::PoleAtPoint);
  }
}

TEST_F(Rat, SubstituteExamples) {
  RatFunc f = e("z1^2", vt);
  EXPECT_EQ(substitute(f, {{"z1", e("z1 + t", vt)}}, vt), e("z1^2 + 2*t*z1 + t^2", vt));
  EXPECT_EQ(substitute(e("z1/z2"), {{"z1", e("z2")}}, v3), e("1"));
  try {
    substitute(e("1/z1"), {{"z1", e("0")}}, v3);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::IdenticallyZeroDenominator);
  }
  EXPECT_EQ(substitute(e("z1/(z2 + 1)"), {{"z2", e("1/z3")}}, v3), e("z1*z3/(z3 + 1)"));
  EXPECT_THROW(substitute(e("z1"), {{"w", e("z1")}}, v3), Error);
}

TEST_F(Rat, SubstituteIdentityIsIdentity) {
  Rng rng(77);
  for (int k = 0; k < 100; ++k) {
    RatFunc f = random_ratfunc(rng, v3, 3);
    EXPECT_EQ(substitute(f, {}, v3), f);
    EXPECT_EQ(substitute(f, {{"z1", e("z1")}, {"z3", e("z3")}}, v3), f);
  }
}

TEST_F(Rat, SubstituteMatchesEvaluation) {
  Rng rng(78);
  for (int k = 0; k < 100; ++k) {
    RatFunc f = random_ratfunc(rng, v3, 3);
    RatFunc a = random_ratfunc(rng, v3, 2);
    RatFunc b = random_ratfunc(rng, v3, 2);
    RatFunc g;
    try {
      g = substitute(f, {{"z1", a}, {"z2", b}}, v3);
    } catch (const Error& err) {
      ASSERT_EQ(err.code(), ErrorCode::IdenticallyZeroDenominator);
      continue;
    }
    std::vector<Gq> pt{sample_gaussian_rational(rng, 30), sample_gaussian_rational(rng, 30),
                       sample_gaussian_rational(rng, 30)};
    try {
      std::vector<Gq> inner{evaluate(a, pt), evaluate(b, pt), pt[2]};
      EXPECT_EQ(evaluate(g, pt), evaluate(f, inner));
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::PoleAtPoint);
    }
  }
}

TEST_F(Rat, FieldLawsOnRandomFunctions) {
  Rng rng(79);
  for (int k = 0; k < 150; ++k) {
    RatFunc a = random_ratfunc(rng, v3, 2);
    RatFunc b = random_ratfunc(rng, v3, 2);
    RatFunc c = random_ratfunc(rng, v3, 2);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, RatFunc(v3));
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), RatFunc::constant(v3, Gq(1)));
    EXPECT_EQ(derivative(a * b, 1), derivative(a, 1) * b + a * derivative(b, 1));
    EXPECT_TRUE(a.den().leading_coefficient().is_one());
    EXPECT_TRUE(poly_gcd(a.num().is_zero() ? a.den() : a.num(), a.den()).is_one());
  }
}

TEST_F(Rat, PowAndCompose) {
  EXPECT_EQ(pow(e("z1/z2"), -2), e("z2^2/z1^2"));
  EXPECT_EQ(pow(e("z1 + 1"), 0), e("1"));
  VarSet t = VarSet::parse("t");
  RatFunc ell = parse_expr("1/t + t^2", t);
  EXPECT_EQ(compose(ell, e("z2 + i*z3")), e("1/(z2 + i*z3) + (z2 + i*z3)^2"));
}
