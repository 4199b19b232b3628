#include <gtest/gtest.h>

#include <random>

#include "dzeta/errors.hpp"
#include "dzeta/polynomial.hpp"

using namespace dzeta;

TEST(Polynomial, ExpandsAndReducesModP) {
  const auto f = poly::parse_polynomial("(x + 1)^5 - x^5 - 1", {"x"}, 5);
  EXPECT_TRUE(f.terms.empty());
  const auto g = poly::parse_polynomial("(x + y)^2", {"x", "y"}, 7);
  EXPECT_EQ(g.terms.size(), 3u);
  EXPECT_EQ(g.degree_in(0), 2u);
  EXPECT_EQ(g.degree_in(1), 2u);
}

TEST(Polynomial, EvaluationMatchesDirectArithmetic) {
  const auto F = ff::ExtField::build(5, 1, 2);
  const auto f = poly::parse_polynomial("y^2 - x^3 - x + 3*x*y - 7", {"x", "y"}, 5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = F.element(rng() % F.size());
    const auto y = F.element(rng() % F.size());
    const std::vector<ff::FFElem> pt{x, y};
    const auto want = y * y - x * x * x - x + F.from_int(3) * x * y - F.from_int(7);
    EXPECT_TRUE(f.evaluate(pt) == want);
  }
}

TEST(Polynomial, SyntaxErrorsCarryColumn) {
  try {
    poly::parse_polynomial("x + * y", {"x", "y"}, 3);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
  EXPECT_THROW(poly::parse_polynomial("x + z", {"x", "y"}, 3), ValidationError);
  EXPECT_THROW(poly::parse_polynomial("-x", {"x"}, 3), ValidationError);
  EXPECT_THROW(poly::parse_polynomial("x^999", {"x"}, 3), ValidationError);
  EXPECT_THROW(poly::parse_polynomial("(x + 1", {"x"}, 3), ValidationError);
  EXPECT_THROW(poly::check_polynomial_syntax("x", {"x", "x"}), ValidationError);
  EXPECT_NO_THROW(poly::check_polynomial_syntax("x*(y+2)^3", {"x", "y"}));
}
