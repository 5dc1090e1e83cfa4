#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hesslab;

namespace {

const IntMatrix kM1 = parse_matrix("0 1 2; 1 0 0; 0 3 5");
const IntMatrix kM2 = parse_matrix("0 2 3; 1 1 1; 0 3 4");

}  // namespace

TEST(Complexity, Examples) {
  EXPECT_EQ(hessenberg_complexity(parse_matrix("0 0 1; 1 0 1; 0 1 3")), 1);
  EXPECT_EQ(hessenberg_complexity(kM1), 3);
  FamilyPoint fp{parse_hess_type("<0,1|1,0,2>"), IntVector{1, 0, 1}, {4, -7}};
  EXPECT_EQ(hessenberg_complexity(family_member(fp)), 2);
  FamilyPoint fq{parse_hess_type("<1,2|1,1,3>"), IntVector{0, 0, -1}, {2, 5}};
  EXPECT_EQ(hessenberg_complexity(family_member(fq)), 12);
  EXPECT_THROW(hessenberg_complexity(parse_matrix("0 0 1; 1 0 0; 1 1 0")), PreconditionError);
}

TEST(Perfect, Predicate) {
  EXPECT_TRUE(is_perfect(kM1));
  EXPECT_TRUE(is_perfect(parse_matrix("2 1; 5 3")));
  EXPECT_FALSE(is_perfect(IntMatrix::identity(2)));
  EXPECT_FALSE(is_perfect(parse_matrix("0 3 2; 1 0 0; 0 3 5")));
}

TEST(HessTypeText, RoundTrip) {
  HessType t = parse_hess_type("<0,1|1,0,2>");
  EXPECT_EQ(t.to_string(), "<0,1|1,0,2>");
  EXPECT_EQ(t.n, 3u);
  EXPECT_EQ(parse_hess_type("⟨1,2|1,1,3⟩").to_string(), "<1,2|1,1,3>");
  EXPECT_THROW(parse_hess_type("<0,1|1,0>"), ParseError);
  EXPECT_THROW(parse_hess_type("0,1"), ParseError);
  EXPECT_THROW(parse_hess_type("<0,0|1,0,2>"), PreconditionError);
}

TEST(Reduce, PerfectInputIsFixed) {
  PerfectForm pf = reduce_to_perfect(kM1, IntVector{1, 0, 0});
  EXPECT_EQ(pf.perfect, kM1);
  EXPECT_EQ(pf.conjugator, IntMatrix::identity(3));
}

TEST(Reduce, SecondBasisOfExample) {
  PerfectForm pf = reduce_to_perfect(kM1, IntVector{0, 1, -1});
  EXPECT_EQ(pf.perfect, kM2);
  EXPECT_EQ(inverse_unimodular(pf.conjugator) * kM1 * pf.conjugator, kM2);
}

TEST(Reduce, Rejections) {
  EXPECT_THROW(reduce_to_perfect(kM1, IntVector{0, 0, 0}), PreconditionError);
  EXPECT_THROW(reduce_to_perfect(kM1, IntVector{2, 0, 0}), PreconditionError);
  EXPECT_THROW(reduce_to_perfect(IntMatrix::identity(3), IntVector{1, 0, 0}), DegenerateFlagError);
  EXPECT_THROW(reduce_to_perfect(parse_matrix("2 0 0; 0 1 0; 0 0 1"), IntVector{1, 0, 0}), PreconditionError);
}

TEST(Reduce, ConjugationEquivariance) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    IntMatrix u = oracle::random_sl(rng, 3);
    IntMatrix a = inverse_unimodular(u) * kM1 * u;
    // (-1,0,0) in the original basis is u^-1 (-1,0,0) in the new one
    IntVector seed = inverse_unimodular(u) * IntVector{-1, 0, 0};
    PerfectForm pf = reduce_to_perfect(a, seed);
    ASSERT_EQ(pf.perfect, kM1);
  }
}

TEST(Reduce, RandomPairsSatisfyIdentity) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> d(-3, 3);
  int done = 0;
  while (done < 500) {
    std::size_t n = 3 + static_cast<std::size_t>(done % 2);
    IntMatrix m = oracle::random_sl(rng, n, 8, 3);
    if (!is_irreducible(char_poly(m))) continue;
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
    if (v.is_zero() || !v.is_primitive()) continue;
    PerfectForm pf = reduce_to_perfect(m, v);
    ASSERT_EQ(abs(det(pf.conjugator)), 1);
    ASSERT_EQ(pf.conjugator.column(0), v);
    ASSERT_EQ(inverse_unimodular(pf.conjugator) * m * pf.conjugator, pf.perfect);
    ASSERT_TRUE(is_perfect(pf.perfect)) << pf.perfect.to_string();
    ASSERT_EQ(hessenberg_complexity(pf.perfect), md_characteristic(m, v));
    ++done;
  }
}

TEST(Family, Members) {
  HessType t = parse_hess_type("<0,1|1,0,2>");
  EXPECT_EQ(family_member({t, IntVector{1, 0, 1}, {0, 0}}), parse_matrix("0 1 1; 1 0 0; 0 2 1"));
  for (long m = -5; m <= 5; ++m)
    for (long n = -5; n <= 5; ++n) {
      IntMatrix h = family_member({t, IntVector{1, 0, 1}, {m, n}});
      IntMatrix want(3);
      want(0, 1) = 1;
      want(0, 2) = n + 1;
      want(1, 0) = 1;
      want(1, 2) = m;
      want(2, 1) = 2;
      want(2, 2) = 2 * n + 1;
      ASSERT_EQ(h, want);
      ASSERT_EQ(det(h), 1);
    }
  FamilyPoint f4{parse_hess_type("<0,1|0,0,1|1,3,1,4>"), IntVector{0, 1, 0, 1}, {0, 0, 0}};
  EXPECT_EQ(family_member(f4), parse_matrix("0 0 1 0; 1 0 3 1; 0 1 1 0; 0 0 4 1"));
  EXPECT_THROW(family_member({t, IntVector{1, 0, 0}, {0, 0}}), PreconditionError);
}

TEST(Family, LastColumnFrom) {
  HessType frob = parse_hess_type("<0,1|0,0,1>");
  EXPECT_EQ(last_column_from(frob, IntPoly{-1, -1, -3, 1}), (IntVector{1, 1, 3}));
  HessType t = parse_hess_type("<0,1|1,0,2>");
  IntPoly p = char_poly(family_member({t, IntVector{1, 0, 1}, {1, 1}}));
  EXPECT_EQ(last_column_from(t, p), (IntVector{2, 1, 3}));
  EXPECT_FALSE(last_column_from(t, IntPoly{-1, 0, 0, 1}).has_value());
}

TEST(Family, LastColumnIsLeftInverse) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-20, 20);
  for (const char* ts : {"<0,1|1,0,2>", "<1,2|1,1,3>", "<0,1|0,0,1|1,3,1,4>", "<0,1|1,1,2>"}) {
    HessType t = parse_hess_type(ts);
    for (int k = 0; k < 60; ++k) {
      IntVector last(t.n);
      for (std::size_t i = 0; i < t.n; ++i) last[i] = d(rng);
      IntMatrix h = t.with_last_column(last);
      ASSERT_EQ(last_column_from(t, char_poly(h)), last);
    }
  }
}

TEST(Family, ValidateType) {
  EXPECT_TRUE(validate_type(parse_hess_type("<0,1|0,0,1>"), IntVector{1, 0, 0}));
  EXPECT_FALSE(validate_type(parse_hess_type("<0,2|0,0,1>"), IntVector{1, 0, 0}));
  EXPECT_TRUE(validate_type(parse_hess_type("<1,2|1,1,3>"), IntVector{0, 0, -1}));
  EXPECT_TRUE(validate_type(parse_hess_type("<0,1|1,0,2>"), IntVector{1, 0, 1}));
  EXPECT_FALSE(validate_type(parse_hess_type("<0,1|1,0,2>"), IntVector{0, 0, 2}));
}

TEST(Family, DeterminantConstantAcrossParameters) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<long> d(-50, 50);
  HessType t = parse_hess_type("<1,2|1,1,3>");
  for (int k = 0; k < 100; ++k) {
    IntMatrix h = family_member({t, IntVector{0, 0, -1}, {d(rng), d(rng)}});
    ASSERT_EQ(det(h), 1);
    ASSERT_EQ(char_poly(h).coeff(0), -1);
  }
}
