#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "etf/catalog.hpp"
#include "etf/error.hpp"
#include "test_util.hpp"

namespace etf {
namespace {

using std::numbers::pi;
using testing::unit;

Complex horner(const std::vector<double>& c, Complex v) {
  Complex r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * v + *it;
  return r;
}

const std::vector<double> kOctic73 = {16, 0, 6, 0, 5, 0, 6, 0, 16};
const std::vector<double> kOctic83a = {625, 0, 1020, 0, 806, 0, 1020, 0, 625};
const std::vector<double> kOctic83b = {15625, 0, -39780, 0, 52406, 0, -39780, 0, 15625};

TEST(OmegaTest, CubicRoot) {
  Complex w = omega();
  EXPECT_LE(std::abs(w * w * w - 1.0), 1e-15);
  EXPECT_LE(std::abs(1.0 + w + w * w), 1e-15);
}

TEST(SimplexTest, Properties) {
  ComplexMatrix g = g4_simplex();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(g(i, j), i == j ? Complex(1) : Complex(-1.0 / 3));
    }
  }
  EXPECT_NEAR(std::abs(g(0, 1)), welch_bound(4, 3), 1e-15);
  ComplexMatrix lhs = testing::naive_mul(g, g) * 3.0;
  EXPECT_LE(testing::max_diff(lhs, g * 4.0), 1e-14);
}

TEST(G6Test, Entries) {
  ComplexMatrix g = g6_family(Complex(0, 1));
  EXPECT_LE(std::abs(g(1, 2) - Complex(0, 1) / std::sqrt(5.0)), 1e-15);
  for (int j = 1; j < 6; ++j) EXPECT_NEAR(std::abs(g(0, j) - 1 / std::sqrt(5.0)), 0, 1e-15);
  EXPECT_LE(testing::naive_etf_residual(g6_family(1.0), 6, 3), 1e-12);
  try {
    g6_family(0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotUnimodular);
  }
}

TEST(FamilySweep, G6G9H9) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 20; ++k) {
    Complex a = testing::random_unimodular(rng);
    EXPECT_LE(testing::naive_etf_residual(g6_family(a), 6, 3), 1e-9);
    EXPECT_LE(testing::naive_etf_residual(g9_family(a), 9, 3), 1e-9);
    ComplexMatrix h = h9_family(a);
    EXPECT_LE(testing::max_diff(testing::naive_mul(h, testing::naive_adjoint(h)),
                                ComplexMatrix::Identity(9, 9) * 9.0),
              1e-9);
    EXPECT_LE(testing::max_diff(h, testing::naive_adjoint(h)), 1e-15);
    ComplexMatrix g = g9_family(a);
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        if (i != j) {
          EXPECT_NEAR(std::abs(g(i, j)), 0.5, 1e-12);
        }
      }
    }
    EXPECT_LE(testing::max_diff(testing::naive_mul(g, g) * 3.0, g * 9.0), 1e-9);
  }
}

TEST(H9Test, Spectrum) {
  for (Complex a : {Complex(1), Complex(-1), unit(0.3)}) {
    ComplexMatrix h = h9_family(a);
    EXPECT_NEAR(h.trace().real(), 9, 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    auto ev = es.eigenvalues();
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev(i), -3, 1e-8);
    for (int i = 3; i < 9; ++i) EXPECT_NEAR(ev(i), 3, 1e-8);
  }
}

TEST(H9Test, Continuity) {
  std::mt19937_64 rng(62);
  std::normal_distribution<double> d(0, 0.05);
  for (int k = 0; k < 50; ++k) {
    double t = 2 * pi * k / 50;
    Complex a = unit(t), b = unit(t + d(rng));
    EXPECT_LE(max_abs(h9_family(a) - h9_family(b)), 3 * std::abs(a - b) + 1e-15);
  }
}

TEST(H9Test, NegatedBlock) {
  ComplexMatrix h = h9_negated_block();
  EXPECT_LE(testing::max_diff(h, testing::naive_adjoint(h)), 1e-15);
  EXPECT_LE(testing::max_diff(testing::naive_mul(h, h.adjoint()),
                              ComplexMatrix::Identity(9, 9) * 9.0),
            1e-10);
  bool plus = false, minus = false;
  for (int i = 0; i < 9; ++i) {
    plus = plus || std::abs(h(i, i) - 1.0) < 1e-15;
    minus = minus || std::abs(h(i, i) + 1.0) < 1e-15;
  }
  EXPECT_TRUE(plus && minus);
  ComplexMatrix g = (3.0 * ComplexMatrix::Identity(9, 9) - h) / 2.0;
  EXPECT_FALSE(check_etf_gram(g, FrameParams::make(9, 3)).pass());
}

TEST(NearMiss53Test, Conditions) {
  Complex a = near_miss_53_parameter();
  EXPECT_NEAR(std::abs(a), 1.0, 1e-12);
  EXPECT_LE(std::abs(a - Complex(-std::sqrt(6.0) / 9, 5 * std::sqrt(3.0) / 9)), 1e-15);
  ComplexMatrix h = near_miss_53();
  FrameParams p = FrameParams::make(5, 3);
  EXPECT_TRUE(subgram_analytic_test(h, p, 2));
  EXPECT_LE(numerical_rank(h), 3);
  TripleTestResult t = haagerup_triple_test(h, p);
  EXPECT_FALSE(t.pass);
  EXPECT_GT(t.maxResidual, 1e-3);
}

TEST(Search73Test, CountEquivalenceAndRoots) {
  auto sols = enumerate_73_solutions();
  ASSERT_EQ(sols.size(), 120u);
  const double alpha = welch_bound(7, 3);
  for (const auto& h : sols) {
    for (int i = 1; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        EXPECT_LE(std::abs(horner(kOctic73, h(i, j) / alpha)), 1e-10);
      }
    }
    EXPECT_TRUE(equivalent(sols.front(), h));
  }
  // Deterministic across runs and thread counts.
  auto again = enumerate_73_solutions(1);
  ASSERT_EQ(again.size(), sols.size());
  for (std::size_t k = 0; k < sols.size(); ++k) EXPECT_EQ(again[k], sols[k]);
  EXPECT_LE(std::abs(horner(kOctic73, x73_parameter())), 1e-12);
}

TEST(G7Test, ValidAndExtendsFirstSolution) {
  ComplexMatrix g = g7_unique();
  FrameParams p = FrameParams::make(7, 3);
  EXPECT_TRUE(check_etf_gram(g, p, 1e-8).pass());
  EXPECT_LE(testing::naive_etf_residual(g, 7, 3), 1e-8);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (i != j) {
        EXPECT_NEAR(std::abs(g(i, j)), std::sqrt(2.0) / 3, 1e-9);
      }
    }
  }
  EXPECT_TRUE(equivalent(g.topLeftCorner(5, 5), enumerate_73_solutions().front()));
  ComplexMatrix back = extend_subgram(g.topLeftCorner(6, 6), p);
  Complex ph = g(0, 6) / back(0, 6);
  EXPECT_LE(testing::max_diff(back.col(6).head(6) * ph, g.col(6).head(6)), 1e-9);
}

TEST(PolynomialRootsTest, Octics) {
  for (const auto* c : {&kOctic73, &kOctic83a, &kOctic83b}) {
    auto roots = polynomial_roots(*c);
    ASSERT_EQ(roots.size(), 8u);
    for (Complex r : roots) {
      EXPECT_NEAR(std::abs(r), 1.0, 1e-9);
      EXPECT_LE(std::abs(horner(*c, r)), 1e-8 * (*c)[0]);
    }
  }
  auto quad = polynomial_roots({-1, 0, 1});
  ASSERT_EQ(quad.size(), 2u);
}

TEST(Search83Test, KnownConfiguration) {
  ComplexMatrix h = near_miss_83_search();
  FrameParams p = FrameParams::make(8, 3);
  EXPECT_EQ(numerical_rank(h), 3);
  EXPECT_TRUE(has_off_diagonal_modulus(h, std::sqrt(5.0 / 21), 1e-9));
  EXPECT_TRUE(is_self_adjoint(h));
  EXPECT_FALSE(subgram_rank_test(h, p, 2));
  EXPECT_FALSE(haagerup_triple_test(h, p).pass);
  const double alpha = p.alpha;
  for (int i = 1; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      const auto& octic = (i == 4 && j == 5) ? kOctic83b : kOctic83a;
      EXPECT_LE(std::abs(horner(octic, h(i, j) / alpha)), 1e-8 * octic[0]) << i << "," << j;
    }
  }
}

TEST(Search83Test, MatchesGoldenFile) {
  std::ifstream in(std::string(ETF_TEST_DATA) + "/near_miss_83.mat");
  ASSERT_TRUE(in);
  ComplexMatrix golden = read_matrix(in);
  EXPECT_LE(testing::max_diff(near_miss_83_search(), golden), 1e-12);
}

TEST(Search83Test, Budget) {
  ComputeBudget b;
  b.maxSeconds = 1;
  EXPECT_NO_THROW(near_miss_83_search(b));
}

TEST(RowExtensionTest, ScenarioCounts) {
  EXPECT_EQ(count_row_extensions(Scenario::GenericA), 4u);
  EXPECT_EQ(count_row_extensions(Scenario::AMinusOne), 5u);
  EXPECT_EQ(count_row_extensions(Scenario::CubicOnly), 12u);
  RowExtensionCount generic = count_row_extensions_detail(Scenario::GenericA);
  EXPECT_EQ(generic.classes, 1u);
  RowExtensionCount cubic = count_row_extensions_detail(Scenario::CubicOnly);
  EXPECT_EQ(cubic.classes, 1u);
  RowExtensionCount minus = count_row_extensions_detail(Scenario::AMinusOne);
  EXPECT_GE(minus.distinct, minus.classes);
}

TEST(RowExtensionTest, Scenarios) {
  for (auto s : {Scenario::GenericA, Scenario::AMinusOne, Scenario::CubicOnly}) {
    EXPECT_EQ(parse_scenario(to_string(s)), s);
  }
  try {
    parse_scenario("generic");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadScenario);
  }
}

TEST(RegistryTest, InstantiateEveryFamily) {
  for (const auto& f : families()) {
    ComplexMatrix g = instantiate(f.name);
    EXPECT_GT(g.rows(), 0) << f.name;
    if (f.params) {
      EXPECT_EQ(g.rows(), f.params->n);
      EXPECT_TRUE(check_etf_gram(g, *f.params, 1e-9).pass()) << f.name;
      if (f.params->n >= 5) {
        ComplexMatrix h = g.topLeftCorner(f.params->n - 2, f.params->n - 2);
        EXPECT_TRUE(haagerup_triple_test(h, *f.params).pass) << f.name;
        EXPECT_TRUE(subgram_rank_test(h, *f.params, 2)) << f.name;
      }
    }
  }
  EXPECT_THROW(instantiate("g4_simplex", Complex(1)), Error);
  EXPECT_THROW(instantiate("nope"), Error);
  EXPECT_EQ(instantiate("g6_family", Complex(0, 1)), g6_family(Complex(0, 1)));
}

}  // namespace
}  // namespace etf
