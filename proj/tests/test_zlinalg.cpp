#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace tilehom {
namespace {

IntVector ints(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

void expect_valid_snf(const IntMatrix& m, const SmithDecomposition& s) {
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i) {
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
    }
  }
  for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i) {
    if (i < s.rank) {
      EXPECT_GT(s.D(i, i), 0);
      if (i > 0) {
        EXPECT_TRUE(mpz_divisible_p(s.D(i, i).get_mpz_t(), s.D(i - 1, i - 1).get_mpz_t()));
      }
    } else {
      EXPECT_EQ(s.D(i, i), 0);
    }
  }
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(IntMatrix{{2, 0}, {0, 3}}), 6);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
  EXPECT_EQ(determinant(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), 4);
  EXPECT_EQ(determinant(IntMatrix(0, 0)), 1);
}

TEST(Smith, Examples) {
  const IntMatrix a{{2, 0}, {0, 3}};
  auto s = smith_normal_form(a);
  expect_valid_snf(a, s);
  EXPECT_EQ(s.invariant_factors(), ints({1, 6}));

  const IntMatrix b{{2, 4}, {6, 8}};
  s = smith_normal_form(b);
  expect_valid_snf(b, s);
  EXPECT_EQ(s.invariant_factors(), ints({2, 4}));

  const IntMatrix z(3, 2);
  s = smith_normal_form(z);
  expect_valid_snf(z, s);
  EXPECT_EQ(s.rank, 0u);

  const IntMatrix wide{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  s = smith_normal_form(wide);
  expect_valid_snf(wide, s);
  EXPECT_EQ(s.invariant_factors(), ints({2, 6, 12}));
}

TEST(Smith, Deterministic) {
  const IntMatrix m{{3, 5, 7}, {2, 4, 6}, {1, 1, 1}, {9, 0, 2}};
  const auto s1 = smith_normal_form(m);
  const auto s2 = smith_normal_form(m);
  EXPECT_EQ(s1.U, s2.U);
  EXPECT_EQ(s1.V, s2.V);
  EXPECT_EQ(s1.D, s2.D);
}

TEST(Solve, Examples) {
  const IntMatrix m{{2, 0}, {0, 3}};
  EXPECT_EQ(*solve_integer(m, ints({4, 9})), ints({2, 3}));
  EXPECT_FALSE(solve_integer(m, ints({1, 0})));
  EXPECT_FALSE(solve_integer_hermite(m, ints({1, 0})));
  EXPECT_EQ(*solve_integer_hermite(m, ints({4, 9})), ints({2, 3}));

  // Rationally solvable but not over the integers.
  const IntMatrix two{{2}, {2}};
  EXPECT_FALSE(solve_integer(two, ints({1, 1})));
  EXPECT_TRUE(solve_integer(two, ints({2, 2})));
  // Inconsistent.
  EXPECT_FALSE(solve_integer(two, ints({2, 4})));
  EXPECT_THROW(solve_integer(two, ints({1})), UsageError);
}

TEST(Hermite, Examples) {
  const IntMatrix m{{2, 3, 6, 2}, {5, 6, 1, 6}, {8, 3, 1, 1}};
  const auto h = hermite_normal_form(m);
  EXPECT_EQ(h.W * m, h.H);
  EXPECT_EQ(abs(determinant(h.W)), 1);
  EXPECT_EQ(h.rank, 3u);
  for (std::size_t k = 0; k < h.rank; ++k) {
    const std::size_t p = h.pivot_cols[k];
    EXPECT_GT(h.H(k, p), 0);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_GE(h.H(i, p), 0);
      EXPECT_LT(h.H(i, p), h.H(k, p));
    }
    for (std::size_t i = k + 1; i < h.H.rows(); ++i) EXPECT_EQ(h.H(i, p), 0);
  }
}

TEST(SmithProperties, RandomMatrices) {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 300; ++iter) {
    const IntMatrix m = testing::random_matrix(rng);
    SCOPED_TRACE(iter);
    const auto s = smith_normal_form(m);
    expect_valid_snf(m, s);
    // d1 * ... * dk = gcd of k x k minors.
    Integer prod = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
      if (k <= s.rank) prod *= s.D(k - 1, k - 1);
      EXPECT_EQ(testing::minors_gcd(m, k), k <= s.rank ? prod : Integer(0)) << "k=" << k;
    }
  }
}

TEST(SmithProperties, LargeEntries) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    const IntMatrix m = testing::random_matrix(rng, 5, 1'000'000'000);
    expect_valid_snf(m, smith_normal_form(m));
  }
}

TEST(SolveProperties, SmithAndHermiteAgree) {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int iter = 0; iter < 300; ++iter) {
    const IntMatrix m = testing::random_matrix(rng, 6, 5);
    IntVector b(m.rows());
    if (iter % 2 == 0) {
      // Solvable by construction.
      IntVector x(m.cols());
      for (auto& v : x) v = coef(rng);
      b = m * x;
    } else {
      for (auto& v : b) v = coef(rng);
    }
    const auto xs = solve_integer(m, b);
    const auto xh = solve_integer_hermite(m, b);
    EXPECT_EQ(xs.has_value(), xh.has_value()) << iter;
    if (xs) {
      EXPECT_EQ(m * *xs, b);
    }
    if (xh) {
      EXPECT_EQ(m * *xh, b);
    }
    if (iter % 2 == 0) {
      EXPECT_TRUE(xs);
    }
  }
}

}  // namespace
}  // namespace tilehom
