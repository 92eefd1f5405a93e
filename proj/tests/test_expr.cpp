#include "equivec/expr.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "equivec/exprgen.hpp"
#include "equivec/rng.hpp"

namespace equivec {
namespace {

TEST(ToPrefix, FigureExample) {
  Expr e = div(sin(x()), cos(x()));
  EXPECT_EQ(to_prefix_string(e), "div sin x cos x");
}

TEST(ToPrefix, VarLeaf) {
  EXPECT_EQ(to_prefix_string(x()), "x");
}

TEST(ToPrefix, IntegerDigitTokens) {
  EXPECT_EQ(to_prefix_string(add(x(), num(25))), "add x INT+ 2 5");
  EXPECT_EQ(to_prefix_string(num(-307)), "INT- 3 0 7");
  EXPECT_EQ(to_prefix_string(num(0)), "INT+ 0");
}

TEST(ToPrefix, NamedConstants) {
  EXPECT_EQ(to_prefix_string(mul(pi(), euler())), "mul pi euler");
}

TEST(ParsePrefix, FigureExample) {
  Expr e = parse_prefix_string("div sin x cos x");
  EXPECT_EQ(e, div(sin(x()), cos(x())));
}

TEST(ParsePrefix, Truncated) {
  try {
    parse_prefix_string("sin");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.kind(), ParseError::Kind::Truncated);
  }
}

TEST(ParsePrefix, TrailingTokens) {
  try {
    parse_prefix_string("x x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.kind(), ParseError::Kind::TrailingTokens);
  }
}

TEST(ParsePrefix, UnknownToken) {
  try {
    parse_prefix_string("add x y");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.kind(), ParseError::Kind::UnknownToken);
  }
}

TEST(ParsePrefix, MalformedInteger) {
  try {
    parse_prefix_string("add x INT+");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.kind(), ParseError::Kind::MalformedInteger);
  }
}

TEST(ParsePrefix, NegativeInteger) {
  Expr e = parse_prefix_string("INT- 3");
  ASSERT_TRUE(e.is_int());
  EXPECT_EQ(e.int_value(), BigInt(-3));
}

TEST(RoundTrip, RandomExpressions) {
  Rng rng(7);
  GenGrammar g;
  g.max_depth = 8;
  for (int i = 0; i < 500; ++i) {
    Expr e = random_expr(rng, g);
    EXPECT_EQ(parse_prefix(to_prefix(e)), e) << e;
  }
}

TEST(PrefixBalance, HoldsForSerializedTrees) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Expr e = random_expr(rng);
    EXPECT_TRUE(prefix_balance_ok(to_prefix(e))) << e;
  }
  EXPECT_FALSE(prefix_balance_ok(split_tokens("sin")));
  EXPECT_FALSE(prefix_balance_ok(split_tokens("x x")));
  EXPECT_FALSE(prefix_balance_ok(split_tokens("")));
}

TEST(EvalNumeric, PythagoreanIdentity) {
  Expr e = add(pow(sin(x()), num(2)), pow(cos(x()), num(2)));
  auto v = eval_numeric(e, 0.7);
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(*v, 1.0, 1e-12);
}

TEST(EvalNumeric, DivisionByZeroIsUndefined) {
  Expr e = div(x(), add(x(), neg(x())));
  EXPECT_FALSE(eval_numeric(e, 1.3).has_value());
  EXPECT_FALSE(eval_numeric(e, 4.0).has_value());
}

TEST(EvalNumeric, KnownLogValue) {
  auto v = eval_numeric(ln(x()), 2.0);
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(*v, 0.6931471805599453, 1e-12);
}

TEST(EvalNumeric, DomainViolations) {
  EXPECT_FALSE(eval_numeric(ln(neg(x())), 1.0).has_value());
  EXPECT_FALSE(eval_numeric(acosh(div(x(), add(x(), x()))), 1.0).has_value());
  EXPECT_FALSE(eval_numeric(asin(num(2)), 1.0).has_value());
  EXPECT_FALSE(eval_numeric(sqrt(neg(num(4))), 1.0).has_value());
}

TEST(EvalNumeric, UndefinedIsAbsorbing) {
  // ln(-x) is undefined for x > 0; the enclosing sin must be too
  Expr e = sin(ln(neg(x())));
  EXPECT_FALSE(eval_numeric(e, 2.5).has_value());
}

TEST(EvalNumeric, Deterministic) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng);
    const double pt = 0.1 + 9.0 * next_double(rng);
    auto a = eval_numeric(e, pt);
    auto b = eval_numeric(e, pt);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(*a, *b);  // bitwise
    }
  }
}

TEST(CountOperators, Examples) {
  EXPECT_EQ(count_operators(sin(x())), 1);
  EXPECT_EQ(count_operators(div(sin(x()), cos(x()))), 3);
  EXPECT_EQ(count_operators(neg(num(3))), 0);
  EXPECT_EQ(count_operators(neg(x())), 1);
  EXPECT_EQ(count_operators(neg(pi())), 0);
  EXPECT_EQ(count_operators(x()), 0);
}

TEST(IsConstant, Examples) {
  EXPECT_TRUE(is_constant(cos(ln(num(1)))));
  EXPECT_FALSE(is_constant(x()));
  EXPECT_TRUE(is_constant(mul(num(2), pi())));
  EXPECT_FALSE(is_constant(add(num(2), sin(x()))));
}

TEST(Validate, WellFormed) {
  EXPECT_TRUE(validate(div(sin(x()), cos(x()))).empty());
}

TEST(Validate, ArityViolation) {
  Expr bad = Expr::make(Op::Add, {x()});
  auto violations = validate(bad);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].kind, Violation::Kind::Arity);
}

TEST(Validate, LengthCap) {
  Expr e = x();
  for (int i = 0; i < 150; ++i) e = add(e, x());  // 301 tokens
  auto violations = validate(e, 256);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].kind, Violation::Kind::Length);
  EXPECT_TRUE(validate(e).empty());
}

TEST(Expr, StructuralEquality) {
  EXPECT_EQ(add(x(), num(1)), add(x(), num(1)));
  EXPECT_NE(add(x(), num(1)), add(num(1), x()));
  EXPECT_NE(sin(x()), cos(x()));
  EXPECT_EQ(num(BigInt("123456789012345678901234567890")),
            num(BigInt("123456789012345678901234567890")));
}

TEST(Expr, NodeCountAndDepth) {
  EXPECT_EQ(node_count(x()), 1);
  EXPECT_EQ(node_count(div(sin(x()), cos(x()))), 5);
  EXPECT_EQ(depth(x()), 1);
  EXPECT_EQ(depth(div(sin(x()), cos(x()))), 3);
}

}  // namespace
}  // namespace equivec
