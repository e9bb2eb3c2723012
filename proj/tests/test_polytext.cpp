#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "etf/error.hpp"
#include "etf/polytext.hpp"
#include "test_util.hpp"

namespace etf {
namespace {

TEST(PolyTextTest, PrintsDescendingGrevlex) {
  auto t = testing::vars({"al", "x_2_3", "u"});
  MultiPoly p = parse_poly("3 + 58*x_2_3*al + 18*x_2_3^2 + 58*x_2_3^3*al + 3*x_2_3^4", t);
  EXPECT_EQ(to_string(p), "3*x_2_3^4 + 58*al*x_2_3^3 + 18*x_2_3^2 + 58*al*x_2_3 + 3");
}

TEST(PolyTextTest, ZeroAndRationalCoefficients) {
  auto t = testing::vars({"x"});
  EXPECT_EQ(to_string(MultiPoly(t)), "0");
  MultiPoly half = parse_poly("1/2*x - 3/4", t);
  EXPECT_EQ(half.coefficient(Monomial(std::vector<std::uint32_t>{1})), Rational(1, 2));
  EXPECT_EQ(parse_poly(to_string(half), t), half);
}

TEST(PolyTextTest, ImplicitCoefficients) {
  auto t = testing::vars({"x", "y"});
  EXPECT_EQ(parse_poly("-x*y + y", t), parse_poly("-1*x*y + 1*y", t));
  EXPECT_EQ(parse_poly("x*x", t), parse_poly("x^2", t));
}

TEST(PolyTextTest, ParseErrors) {
  auto t = testing::vars({"x"});
  for (const char* bad : {"", "x +", "2**x", "x^", "x^-1", "z", "3 x", "(x)"}) {
    try {
      (void)parse_poly(bad, t);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError) << bad;
    }
  }
}

TEST(PolyTextTest, RoundTripRandom) {
  auto t = testing::vars({"al", "x_2_3", "x_2_4", "x_3_4", "u"});
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> e(0, 4), c(-1000, 1000), nt(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly p(t);
    int k = nt(rng);
    for (int i = 0; i < k; ++i) {
      Monomial m(t->size());
      for (std::size_t v = 0; v < t->size(); ++v) m.set(v, static_cast<std::uint32_t>(e(rng)));
      p.add_term(m, c(rng));
    }
    EXPECT_EQ(parse_poly(to_string(p), t), p);
  }
}

TEST(PolyTextTest, FileWithVarsDirective) {
  std::istringstream in(
      "# n=5 m=3\n# vars: al x_2_3 u\n\n6*al^2 - 1\n# comment\nx_2_3*u - 1\n");
  PolyFile f = parse_poly_file(in);
  ASSERT_EQ(f.vars->names(), (std::vector<std::string>{"al", "x_2_3", "u"}));
  ASSERT_EQ(f.polys.size(), 2u);
  EXPECT_EQ(to_string(f.polys[1]), "1*x_2_3*u - 1");
}

TEST(PolyTextTest, InferredTable) {
  PolyFile f = parse_poly_text("u*x_3_4 - 1\nx_2_10 + x_2_3 + al + b\n");
  EXPECT_EQ(f.vars->names(),
            (std::vector<std::string>{"al", "x_2_3", "x_2_10", "x_3_4", "b", "u"}));
}

TEST(PolyTextTest, FixedTable) {
  auto t = testing::vars({"x", "y", "z"});
  PolyFile f = parse_poly_text("z + x\n", t);
  EXPECT_EQ(f.vars, t);
  EXPECT_THROW(parse_poly_text("w\n", t), Error);
}

TEST(PolyTextTest, ScanVariables) {
  EXPECT_EQ(scan_variables("3*y^2*x + y - 2*al"), (std::vector<std::string>{"y", "x", "al"}));
}

}  // namespace
}  // namespace etf
