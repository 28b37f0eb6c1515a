#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "setorder/error.hpp"
#include "setorder/expr.hpp"

using namespace setorder;

namespace {

double ev(const char* src, std::vector<double> x = {}, std::optional<long long> n = {}) {
  return Expr::parse(src).eval(Env{x, n});
}

}  // namespace

TEST(Expr, Examples) {
  EXPECT_DOUBLE_EQ(ev("sin(x1*(1+1/(n+1)))", {0.0}, 3), 0.0);
  EXPECT_DOUBLE_EQ(ev("3+exp(n)", {}, 0), 4.0);
  EXPECT_DOUBLE_EQ(ev("1 + cos(3*x1) + cos(5*x1)", {0.0}), 3.0);
  EXPECT_DOUBLE_EQ(ev("cos(0)"), 1.0);
  EXPECT_TRUE(std::isinf(ev("exp(n)", {}, 800)));
  EXPECT_DOUBLE_EQ(ev("x1^2", {-2.0}), 4.0);
}

TEST(Expr, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(ev("1 + 2 * 3"), 7.0);
  EXPECT_DOUBLE_EQ(ev("2 ^ 3 ^ 2"), 512.0);
  EXPECT_DOUBLE_EQ(ev("-2 ^ 2"), -4.0);
  EXPECT_DOUBLE_EQ(ev("8 / 4 / 2"), 1.0);
  EXPECT_DOUBLE_EQ(ev("10 - 4 - 3"), 3.0);
  EXPECT_DOUBLE_EQ(ev("pi"), std::numbers::pi);
  EXPECT_TRUE(std::isinf(ev("inf")));
}

TEST(Expr, UnparseRoundTrip) {
  for (const char* src : {"sin(x1*(1+1/(n+1)))", "-x1^2 + 3/x2", "2^3^2", "abs(-x1) - sqrt(4)",
                          "pi/4 + pi/(n+1)"}) {
    const Expr e = Expr::parse(src);
    const Expr back = Expr::parse(e.unparse());
    EXPECT_TRUE(e.same_tree(back)) << src << " -> " << e.unparse();
  }
}

TEST(Expr, VariablesAreTracked) {
  const Expr e = Expr::parse("x3 + n");
  EXPECT_EQ(e.max_x_index(), 3u);
  EXPECT_TRUE(e.uses_n());
  EXPECT_FALSE(Expr::parse("x1").uses_n());
}

TEST(Expr, Errors) {
  EXPECT_THROW(Expr::parse("1 +"), ParseError);
  EXPECT_THROW(Expr::parse("foo(1)"), ParseError);
  EXPECT_THROW(Expr::parse("2 $ 3"), ParseError);
  EXPECT_THROW(ev("1/0"), DomainError);
  EXPECT_THROW(ev("sqrt(-1)"), DomainError);
  EXPECT_THROW(ev("n"), UnboundVariable);
  EXPECT_THROW(ev("x2", {1.0}), UnboundVariable);
}

TEST(Expr, ParseErrorCarriesPosition) {
  try {
    Expr::parse("1 + (2 *");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GE(e.column(), 8);
  }
}

TEST(Guard, ChainsAndConjunctions) {
  const Guard g = Guard::parse("x1 >= 0 && x1 < 2");
  EXPECT_TRUE(g.eval(Env{std::vector<double>{0.0}, {}}));
  EXPECT_TRUE(g.eval(Env{std::vector<double>{1.5}, {}}));
  EXPECT_FALSE(g.eval(Env{std::vector<double>{2.0}, {}}));
  const Guard chain = Guard::parse("0 <= x1 < 2");
  EXPECT_TRUE(chain.eval(Env{std::vector<double>{0.0}, {}}));
  EXPECT_FALSE(chain.eval(Env{std::vector<double>{-0.1}, {}}));
  EXPECT_TRUE(Guard().always());
  EXPECT_TRUE(Guard::parse(Guard::parse("x1 != 1 && n == 2").unparse())
                  .eval(Env{std::vector<double>{0.0}, 2}));
}
