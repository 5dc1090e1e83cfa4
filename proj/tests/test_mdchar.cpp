#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hesslab;

namespace {

std::array<Integer, 10> printed_cubic(long m, long n) {
  return {Integer(-2),
          Integer(-(4 * n + 2)),
          Integer(-(4 * n * n + 4 * m + 4 * n)),
          Integer(4 * m + 2),
          Integer(4 * m * n + 2 * m + 6 * n + 6),
          Integer(-2 * m * m + 4 * n * n + 2 * m + 6 * n + 2),
          Integer(-2),
          Integer(-(2 * m + 2 * n + 2)),
          Integer(-(2 * m * n + 2 * n + 2)),
          Integer(m * m - n * n - 2 * n - 1)};
}

IntMatrix h102(long m, long n) { return family_member({parse_hess_type("<0,1|1,0,2>"), IntVector{1, 0, 1}, {m, n}}); }

}  // namespace

TEST(MdChar, Examples) {
  EXPECT_EQ(md_characteristic(parse_matrix("0 1 2; 1 0 0; 0 3 5"), IntVector{1, 0, 0}), 3);
  IntMatrix m = parse_matrix("0 0 1; 1 0 1; 0 1 3");
  IntVector w{2, -1, 5};
  EXPECT_EQ(md_characteristic(m, m * w), md_characteristic(m, w));
  EXPECT_THROW(md_characteristic(m, IntVector{0, 0, 0}), PreconditionError);
  EXPECT_THROW(md_characteristic(m, IntVector{1, 0}), PreconditionError);
}

TEST(MdChar, MatchesOracle) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    IntMatrix m = oracle::random_matrix(rng, n, -5, 5);
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
    if (v.is_zero()) continue;
    ASSERT_EQ(md_characteristic(m, v), oracle::md(m, v));
  }
}

TEST(MdChar, EqualsComplexityAtFirstBasisVector) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 200; ++k) {
    IntMatrix h = oracle::random_hessenberg(rng, 3 + static_cast<std::size_t>(k % 2), -9, 9);
    ASSERT_EQ(md_characteristic(h, IntVector::unit(h.dim(), 0)), hessenberg_complexity(h));
  }
}

TEST(MdChar, DirichletInvariance) {
  IntMatrix m = parse_matrix("0 1 2; 1 0 0; 0 3 5");
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int k = 0; k < 50; ++k) {
    IntVector v{d(rng), d(rng), d(rng)};
    if (v.is_zero()) continue;
    IntMatrix x = m.pow(static_cast<unsigned>(1 + k % 4));
    ASSERT_EQ(md_characteristic(m, x * v), md_characteristic(m, v));
  }
}

TEST(MdForm, MatchesPrintedCubicUpToSign) {
  for (long m = -5; m <= 5; ++m)
    for (long n = -5; n <= 5; ++n) {
      MDForm3 f = md_form3(h102(m, n));
      auto p = printed_cubic(m, n);
      std::array<Integer, 10> neg;
      for (std::size_t i = 0; i < 10; ++i) neg[i] = -p[i];
      ASSERT_TRUE(f.coeffs == p || f.coeffs == neg) << m << "," << n << ": " << f.to_string();
    }
}

TEST(MdForm, ReproducesMdCharacteristic) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<long> d(-12, 12);
  for (int k = 0; k < 10; ++k) {
    IntMatrix m = oracle::random_matrix(rng, 3, -6, 6);
    MDForm3 f = md_form3(m);
    for (int j = 0; j < 100; ++j) {
      IntVector v{d(rng), d(rng), d(rng)};
      if (v.is_zero()) continue;
      ASSERT_EQ(abs(f.evaluate(v)), md_characteristic(m, v));
    }
  }
}

TEST(MdForm, FrobeniusLeadingCoefficient) {
  MDForm3 f = md_form3(parse_matrix("0 0 1; 1 0 1; 0 1 3"));
  EXPECT_EQ(abs(f.coeffs[0]), 1);
  EXPECT_THROW(md_form3(parse_matrix("0 1; 1 0")), PreconditionError);
}

TEST(Parity, Examples) {
  EXPECT_TRUE(parity_all_even(md_form3(h102(1, 2))));
  EXPECT_FALSE(parity_all_even(md_form3(h102(1, 1))));
  EXPECT_TRUE(parity_all_even(MDForm3{}));
  for (long m = -8; m <= 8; ++m)
    for (long n = -8; n <= 8; ++n) {
      if ((m + n) % 2 != 0) {
        ASSERT_TRUE(parity_all_even(md_form3(h102(m, n))));
      }
    }
}

TEST(MdForm, TextOutput) {
  MDForm3 f = md_form3(h102(1, 2));
  EXPECT_EQ(f.to_string().substr(0, 4), "2x^3");
}
